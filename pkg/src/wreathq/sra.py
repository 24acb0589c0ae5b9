"""The dictionary between symplectic-reflection-algebra and quiver parameters.

For a finite group with a McKay quiver, the weight coordinate at a
vertex is the trace of t*1 + c on the corresponding irreducible, and nu
is k|Gamma|/2.  Cyclic groups get a built-in character table; other
groups are supplied as exact tables.  The deformability report collects
the rectangle, adjacency, trace, and word-genericity conditions that
govern flat deformations of the induced modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cyclotomic import Scalar
from .errors import FormatError
from .linalg import Mat, solve_in_span
from .quiver import DimVector, Quiver, Weight, apply_word_dimvector, dual_reflection, validate_word
from .symmetric import YoungDiagram, contents


@dataclass(frozen=True)
class GammaData:
    """Exact character data of a finite group, indexed by quiver vertices.

    ``table[vertex][element]`` is the character value; the identity
    element must come first in ``elements`` and its column must equal the
    dimensions.  Conjugacy classes are recovered from the table itself
    (characters separate classes).
    """

    order: int
    elements: tuple[str, ...]
    vertices: tuple[str, ...]
    table: dict
    dims: dict
    scalar_order: int

    @staticmethod
    def cyclic(m: int) -> "GammaData":
        """The cyclic group Z/m with characters chi_j(g^s) = zeta^(j s)."""
        if m < 1:
            raise FormatError("cyclic group order must be positive")
        elements = tuple(f"g{s}" for s in range(m))
        vertices = tuple(str(j) for j in range(m))
        table = {
            v: {elements[s]: Scalar.zeta(m, (int(v) * s) % m) for s in range(m)}
            for v in vertices
        }
        dims = {v: 1 for v in vertices}
        return GammaData(m, elements, vertices, table, dims, m)

    def __post_init__(self):
        ident = self.elements[0]
        for v in self.vertices:
            if self.table[v][ident] != Scalar.rational(self.dims[v], self.scalar_order):
                raise FormatError(f"identity column disagrees with dims at vertex {v!r}")
        if sum(self.dims[v] ** 2 for v in self.vertices) != self.order:
            raise FormatError("squared dimensions must sum to the group order")

    def conjugacy_classes(self) -> list[tuple[str, ...]]:
        """Group elements by their full character column."""
        seen: dict[tuple, list[str]] = {}
        for e in self.elements:
            key = tuple(self.table[v][e] for v in self.vertices)
            seen.setdefault(key, []).append(e)
        return [tuple(v) for v in seen.values()]


@dataclass(frozen=True)
class SRAParams:
    """(t, k, c) with c supported on nonidentity elements, a class function."""

    t: Scalar
    k: Scalar
    c: dict

    def validate_against(self, gamma: GammaData) -> None:
        ident = gamma.elements[0]
        for e in self.c:
            if e == ident:
                raise FormatError("c must be supported away from the identity")
            if e not in gamma.elements:
                raise FormatError(f"c refers to unknown element {e!r}")
        for cls in gamma.conjugacy_classes():
            vals = {str(self.c.get(e, Scalar.zero(self.t.order))) for e in cls}
            if len(vals) > 1:
                raise FormatError(f"c is not constant on the class {cls}")


def mckay_quiver_cyclic(m: int) -> Quiver:
    """The affine cycle on m vertices; the double edge pair for m = 2.

    The reflection machinery needs a nontrivial group, so m = 1 is
    rejected.
    """
    if m < 2:
        raise FormatError("the cyclic McKay quiver needs group order at least 2")
    vertices = [str(j) for j in range(m)]
    if m == 2:
        edges = [("a0", "0", "1"), ("a1", "0", "1")]
    else:
        edges = [(f"a{j}", str(j), str((j + 1) % m)) for j in range(m)]
    return Quiver(vertices, edges)


def translate_params(gamma: GammaData, sra: SRAParams) -> tuple[Weight, Scalar]:
    """lambda_i = trace of t*1 + c on N_i; nu = k |Gamma| / 2."""
    sra.validate_against(gamma)
    order = sra.t.order
    out = {}
    for v in gamma.vertices:
        total = sra.t * gamma.dims[v]
        for e, coeff in sra.c.items():
            total = total + coeff * gamma.table[v][e]
        out[v] = total
    nu = sra.k * Fraction(gamma.order, 2)
    return Weight(out, order), nu


def recover_sra(gamma: GammaData, weight: Weight, nu: Scalar) -> SRAParams:
    """Invert the dictionary: solve for t and the class function c exactly.

    The unknowns are t and one value of c per nontrivial conjugacy
    class; the equations are one per vertex.  For cyclic groups this is
    discrete Fourier inversion.
    """
    order = weight.order
    classes = gamma.conjugacy_classes()
    ident = gamma.elements[0]
    nontrivial = [cls for cls in classes if ident not in cls]
    # one column for t (the dimensions) and one per nontrivial class: the
    # trace of c on N_v sums the character over the class elements
    columns = [[Scalar.rational(gamma.dims[v], order) for v in gamma.vertices]]
    for cls in nontrivial:
        col = []
        for v in gamma.vertices:
            s = Scalar.zero(order)
            for e in cls:
                s = s + gamma.table[v][e]
            col.append(s)
        columns.append(col)
    basis = Mat.from_rows([[col[r] for col in columns]
                           for r in range(len(gamma.vertices))], order)
    target = Mat.column([weight[v] for v in gamma.vertices], order)
    sol = solve_in_span(basis, target)
    t = sol[0, 0]
    c = {}
    for k, cls in enumerate(nontrivial):
        value = sol[k + 1, 0]
        if value:
            for e in cls:
                c[e] = value
    k_param = nu * Fraction(2, gamma.order)
    return SRAParams(t, k_param, c)


# ---------------------------------------------------------------------------
# The deformability report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionItem:
    label: str
    passed: bool
    detail: str

    def __str__(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.label}: {self.detail}"


@dataclass(frozen=True)
class ConditionReport:
    items: tuple[ConditionItem, ...]

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    def summary(self) -> str:
        return "\n".join(str(i) for i in self.items)


def deformability_report(q: Quiver, lambda0: Weight, lam: Weight, nu: Scalar,
                         word: Sequence[str],
                         blocks: Sequence[tuple[YoungDiagram, DimVector]],
                         n: Optional[int] = None) -> ConditionReport:
    """Evaluate the deformation conditions for induced modules.

    ``blocks`` lists (diagram X_l, dimension vector alpha_l of Y_l).  The
    report covers: validity of the word against lambda0; rectangles;
    the transported vertices being distinct, loop-free and pairwise
    non-adjacent; the exact trace identities lam . alpha_l =
    (a_l - b_l) nu; and genericity of (lam, nu) along the word prefixes.
    """
    n = n or sum(d.size for d, _ in blocks)
    items: list[ConditionItem] = []

    word_check = validate_word(q, lambda0, list(word))
    items.append(ConditionItem(
        "word", word_check.passed,
        "pivots " + ", ".join(str(s.pivot) for s in word_check.steps) if word_check.steps
        else "empty word"))

    rect_data = []
    for k, (diagram, alpha) in enumerate(blocks, 1):
        data = contents(diagram)
        rect_data.append(data)
        if data.is_rectangle:
            items.append(ConditionItem(
                f"rectangle[{k}]", True,
                f"diagram {diagram.parts} is {data.rect_height} x {data.rect_width}"))
        else:
            items.append(ConditionItem(
                f"rectangle[{k}]", False, f"diagram {diagram.parts} is not a rectangle"))

    transported: list[Optional[str]] = []
    for k, (_, alpha) in enumerate(blocks, 1):
        moved = apply_word_dimvector(q, list(word), alpha)
        vertex = moved.is_unit()
        transported.append(vertex)
        if vertex is None:
            items.append(ConditionItem(
                f"transport[{k}]", False,
                f"w(alpha) = {moved.as_dict()} is not a coordinate vector"))
        else:
            items.append(ConditionItem(
                f"transport[{k}]", True, f"w(alpha) = eps_{vertex}"))

    known = [v for v in transported if v is not None]
    distinct = len(set(known)) == len(known)
    loop_free = all(not q.has_loop_at(v) for v in known)
    non_adjacent = all(not q.adjacent(u, v)
                       for a, u in enumerate(known) for v in known[a + 1:])
    items.append(ConditionItem(
        "separation", distinct and loop_free and non_adjacent,
        f"vertices {known}: "
        + ("distinct" if distinct else "repeated") + ", "
        + ("loop-free" if loop_free else "edge-loop present") + ", "
        + ("pairwise non-adjacent" if non_adjacent else "adjacent pair present")))

    for k, ((diagram, alpha), data) in enumerate(zip(blocks, rect_data), 1):
        if not data.is_rectangle:
            items.append(ConditionItem(
                f"trace[{k}]", False, "needs a rectangular diagram"))
            continue
        lhs = lam.dot(alpha)
        rhs = nu * (data.rect_height - data.rect_width)
        items.append(ConditionItem(
            f"trace[{k}]", lhs == rhs,
            f"lambda . alpha = {lhs}, (a - b) nu = {rhs}"))

    cur = lam
    generic = True
    detail = "no constraints (empty word)" if not word else ""
    for g, letter in enumerate(word, 1):
        cur = dual_reflection(q, letter, cur)
        val = cur[letter]
        for p in range(n):
            if not val + nu * p or not val - nu * p:
                generic = False
                detail = f"prefix {g}: coordinate {val} clashes at p = {p}"
                break
        if not generic:
            break
    if generic and word:
        detail = "all prefix coordinates avoid +-p nu"
    items.append(ConditionItem("word-genericity", generic, detail))

    return ConditionReport(tuple(items))
