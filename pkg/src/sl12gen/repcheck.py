"""Irreducibility of <x, y> on F^12 and the resulting generation verdict.

Every <x, y>-invariant subspace is z-invariant (z = xy). Since the
characteristic polynomial of z is (t - alpha_11^-1) f(t) with f irreducible
and coprime to the linear factor, z has exactly four invariant subspaces:
0, W1 = ker(z - alpha_11^-1), U = ker f(z) and V. The action is irreducible
iff neither W1 nor U is also stable under y (and hence x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import _linalg
from .gf import GF, AlphaVector, FieldSpec, Poly, poly_eval
from .matgen import N, ConstructionError, GeneratorTriple, Mat, Subspace, kernel, poly_at_matrix

EXCLUDED_Q = frozenset({2, 4})
HALVED_Q = frozenset({3, 7})

AS1_ID = "AS-1"
AS1_TEXT = (
    "Every maximal subgroup of SL_12(q) whose order is divisible by Q is reducible on "
    "the natural module, i.e. stabilizes a subspace of dimension 1 or 11. Taken from "
    "the classification of maximal subgroups of SL_12(q); assumed, not machine-checked."
)
AS1_CITATION = (
    "J. N. Bray, D. F. Holt, C. M. Roney-Dougal, The Maximal Subgroups of the "
    "Low-Dimensional Finite Classical Groups, LMS Lecture Note Series 407 (2013), "
    "Tables 8.76 and 8.77"
)


@dataclass(frozen=True)
class CommonEigenReport:
    lam: int
    nu: int
    intersection_dim: int
    witness: Optional[tuple] = None


@dataclass(frozen=True)
class IrreducibilityReport:
    lattice: tuple  # of Subspace: 0, W1, U, V
    y_stable: tuple  # of bool, per lattice member
    x_stable: tuple
    common_eigen: tuple  # of CommonEigenReport
    irreducible: bool
    witness: Optional[Subspace] = None

    @property
    def verdict(self) -> str:
        return "irreducible" if self.irreducible else "reducible"


@dataclass(frozen=True)
class GenerationVerdict:
    q_class: str  # "excluded" | "halvedQ" | "generic"
    checks: dict = field(default_factory=dict)
    conclusion: str = "not_established"  # "generates" | "not_established" | "excluded_diagnostic"
    failed: tuple = ()


def q_class(q: int) -> str:
    if q in EXCLUDED_Q:
        return "excluded"
    if q in HALVED_Q:
        return "halvedQ"
    return "generic"


def stability_check(W: Subspace, g: Mat) -> bool:
    """True iff g W is contained in W."""
    F = g.F
    pivots = W.pivots
    for b in W.basis:
        if any(_linalg.reduce_against(F, W.basis, pivots, g.apply(b))):
            return False
    return True


def z_invariant_lattice(z: Mat, f: Poly, alpha: AlphaVector) -> list[Subspace]:
    """[0, W1, U, V] for z with characteristic polynomial (t - alpha_11^-1) f(t)."""
    F = z.F
    ev = F.inv(alpha[11])
    if poly_eval(F, f, ev) == 0:
        raise ConstructionError("f(alpha_11^-1) = 0; the two factors are not coprime")
    w1 = kernel(z - Mat.scalar(F, ev, z.n))
    if w1.dim != 1:
        raise ConstructionError(f"dim ker(z - alpha_11^-1) = {w1.dim}, expected 1")
    u = kernel(poly_at_matrix(f, z))
    if u.dim != z.n - 1:
        raise ConstructionError(f"dim ker f(z) = {u.dim}, expected {z.n - 1}")
    return [Subspace.zero(z.n), w1, u, Subspace.whole(F, z.n)]


def cube_roots_of_unity(F: GF) -> list[int]:
    return [a for a in F.elements() if a and F.pow(a, 3) == F.one]


def signs(F: GF) -> list[int]:
    """The distinct values of +1 and -1 in F (one value in characteristic 2)."""
    return sorted({F.one, F.neg(F.one)})


def eigenspace(g: Mat, lam: int) -> Subspace:
    return kernel(g - Mat.scalar(g.F, lam, g.n))


def common_eigenvector_scan(x: Mat, y: Mat, spec: FieldSpec | None = None) -> list[CommonEigenReport]:
    """dim(ker(y - lam) & ker(x - nu)) for every lam with lam^3 = 1 and nu = +-1."""
    F = x.F
    reports = []
    for lam in cube_roots_of_unity(F):
        ym = (y - Mat.scalar(F, lam, y.n)).rows
        for nu in signs(F):
            xm = (x - Mat.scalar(F, nu, x.n)).rows
            null = _linalg.nullspace(F, list(ym) + list(xm), x.n)
            witness = tuple(null[0]) if null else None
            reports.append(CommonEigenReport(lam, nu, len(null), witness))
    return reports


def spin_oracle(seed_vectors: Sequence[Sequence[int]], gens: Sequence[Mat], F: GF | None = None,
                ambient_dim: int = N) -> Subspace:
    """Smallest subspace containing the seeds and stable under every generator."""
    if F is None:
        if not gens:
            raise ValueError("need a field when no generators are given")
        F = gens[0].F
    seeds = [list(v) for v in seed_vectors if any(v)]
    echelon, pivots = _linalg.rref(F, seeds) if seeds else ([], [])
    queue = list(echelon)
    while queue:
        v = queue.pop()
        for g in gens:
            w = _linalg.reduce_against(F, echelon, pivots, g.apply(v))
            if any(w):
                echelon, pivots = _linalg.rref(F, echelon + [w])
                queue.append(w)
    return Subspace(ambient_dim, tuple(tuple(r) for r in echelon))


def spans_standard_basis(x: Mat, y: Mat) -> bool:
    """Each standard basis vector spins up to all of V under {x, y}.

    Necessary for irreducibility but not sufficient: a reducible module can
    still be cyclic on every basis vector.
    """
    F = x.F
    for i in range(x.n):
        e = [0] * x.n
        e[i] = F.one
        if spin_oracle([e], [x, y]).dim != x.n:
            return False
    return True


def norton_test(gens: Sequence[Mat], probe: Mat) -> bool:
    """Norton's irreducibility criterion for the module spanned by ``gens``.

    ``probe`` must be singular (an element of the enveloping algebra, e.g.
    z - c for an eigenvalue c). The module is irreducible iff every nonzero
    vector of ker(probe) spins to V and one nonzero vector of ker(probe^T)
    spins to V under the transposed generators.
    """
    F = probe.F
    n = probe.n
    ker = kernel(probe)
    if ker.dim == 0:
        raise ValueError("probe matrix must be singular")
    for coeffs in _projective_points(F, ker.dim):
        v = [0] * n
        for c, b in zip(coeffs, ker.basis):
            if c:
                v = [F.add(a, F.mul(c, bb)) for a, bb in zip(v, b)]
        if spin_oracle([v], gens).dim != n:
            return False
    ker_t = kernel(probe.transpose())
    w = list(ker_t.basis[0])
    return spin_oracle([w], [g.transpose() for g in gens]).dim == n


def _projective_points(F: GF, d: int):
    # one representative per 1-dim subspace of F^d: first nonzero coordinate is 1
    for lead in range(d):
        tails = [()]
        for _ in range(d - lead - 1):
            tails = [t + (a,) for t in tails for a in F.elements()]
        for tail in tails:
            yield (0,) * lead + (F.one,) + tail


def spin_verdict(x: Mat, y: Mat, probe: Mat) -> bool:
    """Irreducibility of <x, y> decided by spinning alone (no lattice)."""
    return spans_standard_basis(x, y) and norton_test([x, y], probe)


def irreducibility_verdict(triple: GeneratorTriple, f: Poly, spec: FieldSpec | None = None) -> IrreducibilityReport:
    lattice = z_invariant_lattice(triple.z, f, triple.alpha)
    y_flags = tuple(stability_check(W, triple.y) for W in lattice)
    x_flags = tuple(stability_check(W, triple.x) for W in lattice)
    eigen = tuple(common_eigenvector_scan(triple.x, triple.y, spec))
    witness = None
    for W, ys, xs in zip(lattice[1:-1], y_flags[1:-1], x_flags[1:-1]):
        if ys and xs:
            witness = W
            break
    return IrreducibilityReport(
        lattice=tuple(lattice),
        y_stable=y_flags,
        x_stable=x_flags,
        common_eigen=eigen,
        irreducible=witness is None,
        witness=witness,
    )


def generation_verdict(report: IrreducibilityReport | None, order_ok: bool, q: int,
                       checks: dict | None = None) -> GenerationVerdict:
    """Combine the machine checks under assumption AS-1.

    ``checks`` may carry further named booleans (orders, determinants, ...);
    ``order_ok`` and the irreducibility verdict are added to it.
    """
    merged = dict(checks or {})
    merged["z_order_is_Q"] = bool(order_ok)
    merged["irreducible"] = report is not None and report.irreducible
    if report is not None:
        merged["no_common_eigenvector"] = all(r.intersection_dim == 0 for r in report.common_eigen)
    failed = tuple(sorted(k for k, v in merged.items() if not v))
    cls = q_class(q)
    if cls == "excluded":
        conclusion = "excluded_diagnostic"
    elif failed:
        conclusion = "not_established"
    else:
        conclusion = "generates"
    return GenerationVerdict(q_class=cls, checks=merged, conclusion=conclusion, failed=failed)
