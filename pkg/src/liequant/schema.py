"""JSON interchange: parsing, validation and serialization.

Rationals travel as strings ("p" or "p/q"); structure constants are sparse
with i < j keys ("i,j"); antisymmetry is reconstructed.  Monomials serialize
as dot-joined indices with "1" for the empty monomial; tensor-power keys
join their legs with "|", smash legs append "@label" for the group part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .envelope import Mon, ONE
from .errors import SchemaError
from .groups import FiniteGroup, GammaLieBialgebra, GroupAction
from .lie import LieAlgebra, LieBialgebra, QuasitriangularData
from .sparse import El
from .tensors import BasedSpace, LinearMap, Tensor, qstr


def _rat(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError("rationals must be strings or integers", where)
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {value!r}: {exc}", where) from None


def _pair_key(key: str, bound: int, where: str, strict_order: bool = True) -> tuple[int, int]:
    try:
        i, j = (int(part) for part in key.split(","))
    except ValueError:
        raise SchemaError(f"bad index pair {key!r}", where) from None
    if not (0 <= i < bound and 0 <= j < bound):
        raise SchemaError(f"index pair {key!r} out of range 0..{bound - 1}", where)
    if strict_order and not i < j:
        raise SchemaError(f"index pair {key!r} must satisfy i < j", where)
    return i, j


@dataclass
class ParsedInput:
    document: dict
    bialgebra: LieBialgebra
    quasitriangular: QuasitriangularData | None
    gamma: GammaLieBialgebra | None
    options: dict

    @property
    def space(self) -> BasedSpace:
        return self.bialgebra.space


def parse_document(doc: dict) -> ParsedInput:
    if not isinstance(doc, dict):
        raise SchemaError("input document must be a JSON object", "/")
    try:
        dim = int(doc["dimension"])
    except (KeyError, ValueError, TypeError):
        raise SchemaError("missing or bad 'dimension'", "/dimension") from None
    basis = doc.get("basis")
    if basis is None:
        basis = [f"x{i}" for i in range(dim)]
    if len(basis) != dim or len(set(basis)) != dim:
        raise SchemaError("'basis' must list dimension distinct labels", "/basis")
    space = BasedSpace(str(doc.get("name", "a")), tuple(str(b) for b in basis))

    if "bracket" not in doc:
        raise SchemaError("missing 'bracket' table", "/bracket")
    brackets = {}
    for key, entry in doc["bracket"].items():
        i, j = _pair_key(key, dim, f"/bracket/{key}")
        if not isinstance(entry, dict):
            raise SchemaError("bracket entry must map target index to rational",
                              f"/bracket/{key}")
        vec = {}
        for target, value in entry.items():
            k = int(target)
            if not 0 <= k < dim:
                raise SchemaError(f"target index {k} out of range", f"/bracket/{key}/{target}")
            vec[k] = _rat(value, f"/bracket/{key}/{target}")
        brackets[(i, j)] = vec
    lie = LieAlgebra(space, brackets)

    cobrackets = {}
    for gen, entry in (doc.get("cobracket") or {}).items():
        g = int(gen)
        if not 0 <= g < dim:
            raise SchemaError(f"generator index {g} out of range", f"/cobracket/{gen}")
        table = {}
        for key, value in entry.items():
            j, k = _pair_key(key, dim, f"/cobracket/{gen}/{key}")
            table[(j, k)] = _rat(value, f"/cobracket/{gen}/{key}")
        cobrackets[g] = table

    qt = None
    if doc.get("r") is not None:
        r = Tensor.zero((space, space))
        for key, value in doc["r"].items():
            i, j = _pair_key(key, dim, f"/r/{key}", strict_order=False)
            v = _rat(value, f"/r/{key}")
            if v:
                r.data[(i, j)] = v
        qt = QuasitriangularData(lie, r)

    if "cobracket" in doc or qt is None:
        bialg = LieBialgebra(lie, cobrackets)
    else:
        # r given without a cobracket table: use its coboundary
        from .lie import coboundary_cobracket
        bialg = LieBialgebra(lie, cobracket_tensors=coboundary_cobracket(lie, qt.r))

    gamma = None
    if doc.get("group") is not None:
        gdoc = doc["group"]
        try:
            labels = tuple(str(x) for x in gdoc["elements"])
            table = tuple(tuple(int(v) for v in row) for row in gdoc["table"])
        except (KeyError, TypeError, ValueError):
            raise SchemaError("group needs 'elements' and 'table'", "/group") from None
        group = FiniteGroup(labels, table)
        action_doc = doc.get("action") or {}
        maps = []
        for label in labels:
            if label in action_doc:
                rows = action_doc[label]
                if len(rows) != dim or any(len(r) != dim for r in rows):
                    raise SchemaError(f"action matrix for {label!r} must be {dim}x{dim}",
                                      f"/action/{label}")
                maps.append(LinearMap(space, space, [
                    [_rat(v, f"/action/{label}") for v in row] for row in rows]))
            else:
                maps.append(LinearMap.identity(space))
        action = GroupAction(group, maps)
        twists_doc = doc.get("twists") or {}
        twists = []
        for label in labels:
            t = Tensor.zero((space, space))
            for key, value in (twists_doc.get(label) or {}).items():
                i, j = _pair_key(key, dim, f"/twists/{label}/{key}")
                v = _rat(value, f"/twists/{label}/{key}")
                if v:
                    t.data[(i, j)] = v
                    t.data[(j, i)] = -v
            twists.append(t)
        gamma = GammaLieBialgebra(bialg, action, twists)

    options = dict(doc.get("options") or {})
    return ParsedInput(document=doc, bialgebra=bialg, quasitriangular=qt,
                       gamma=gamma, options=options)


def to_document(bialg: LieBialgebra, r: Tensor | None = None,
                gamma: GammaLieBialgebra | None = None, name: str = "a",
                options: dict | None = None) -> dict:
    space = bialg.space
    doc: dict = {
        "name": name,
        "dimension": space.dim,
        "basis": list(space.labels),
        "bracket": {},
        "cobracket": {},
    }
    for i in range(space.dim):
        for j in range(i + 1, space.dim):
            vec = bialg.lie.bracket_basis(i, j)
            if vec:
                doc["bracket"][f"{i},{j}"] = {str(k): qstr(v) for k, v in sorted(vec.items())}
    for i in range(space.dim):
        entry = {}
        for (j, k), v in bialg.cobracket_basis(i).items_sorted():
            if j < k:
                entry[f"{j},{k}"] = qstr(v)
        if entry:
            doc["cobracket"][str(i)] = entry
    if r is not None:
        doc["r"] = {f"{i},{j}": qstr(v) for (i, j), v in r.items_sorted()}
    if gamma is not None:
        grp = gamma.group
        doc["group"] = {"elements": list(grp.labels),
                        "table": [list(row) for row in grp.table]}
        doc["action"] = {}
        for g in grp.elements():
            theta = gamma.action.theta(g)
            if not theta.is_identity():
                doc["action"][grp.labels[g]] = [[qstr(v) for v in row] for row in theta.rows]
        doc["twists"] = {}
        for g in grp.elements():
            entry = {}
            for (i, j), v in gamma.f(g).items_sorted():
                if i < j:
                    entry[f"{i},{j}"] = qstr(v)
            if entry:
                doc["twists"][grp.labels[g]] = entry
    if options:
        doc["options"] = dict(options)
    return doc


# -- element / series serialization -------------------------------------------


def mon_str(m: Mon) -> str:
    # "e" marks the empty monomial; a bare digit string would collide with
    # the length-one monomial of that index
    return "e" if not m else ".".join(str(i) for i in m)


def parse_mon(s: str, where: str) -> Mon:
    if s == "e":
        return ONE
    try:
        return tuple(int(p) for p in s.split("."))
    except ValueError:
        raise SchemaError(f"bad monomial {s!r}", where) from None


def el_to_json(el: El, group: FiniteGroup | None = None) -> dict:
    out = {}
    for key, coeff in el.items_sorted():
        parts = []
        for leg in key:
            if group is not None:
                m, g = leg
                parts.append(f"{mon_str(m)}@{group.labels[g]}")
            else:
                parts.append(mon_str(leg))
        out["|".join(parts)] = qstr(coeff)
    return out


def el_from_json(data: dict, arity: int, group: FiniteGroup | None = None,
                 where: str = "") -> El:
    el = El()
    for key, value in data.items():
        parts = key.split("|")
        if len(parts) != arity:
            raise SchemaError(f"key {key!r} has wrong arity", where)
        legs = []
        for part in parts:
            if group is not None:
                try:
                    mpart, glabel = part.split("@")
                except ValueError:
                    raise SchemaError(f"bad smash key {part!r}", where) from None
                legs.append((parse_mon(mpart, where), group.labels.index(glabel)))
            else:
                legs.append(parse_mon(part, where))
        el.add_term(tuple(legs), _rat(value, where))
    return el


def series_to_json(coeffs, group: FiniteGroup | None = None) -> list[dict]:
    return [el_to_json(c, group) for c in coeffs]


def series_from_json(data: list, arity: int, group: FiniteGroup | None = None,
                     where: str = "") -> list[El]:
    return [el_from_json(entry, arity, group, where) for entry in data]
