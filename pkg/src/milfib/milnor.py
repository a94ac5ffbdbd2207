"""The non-combinatorial route: eigenspace dimensions from jet evaluation.

For each eigenvalue index k (lambda = exp(2*pi*i*k/d)), the two graded
Hodge pieces of the first Milnor fiber cohomology are cokernel dimensions
of exact evaluation maps: homogeneous polynomials of degree k-3 are Taylor
expanded at the multiple points of the arrangement and truncated at orders
read off the multiplier ideals of the point configuration,

    vanishing order at y for the outer ideal:  ceil(m_y*k/d) - 2,
    truncation order at y for the quotient:    floor(m_y*k/d) - 1,

with nonpositive orders meaning "no condition".  Both the map from the
ideal-constrained subspace (restricted to points where m_y*k/d is an
integer) and the unconstrained map from all of C[X]_{k-3} are computed;
their cokernels must agree and the disagreement is reported as an
invariant violation, never expected.

The piece of Hodge level one at k is the level-zero piece at d-k, so one
report per k combines the two cokernels and their sum b_1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .arrangement import Arrangement, IncidenceLattice, build_lattice
from .linalg import Matrix, nullspace, rank
from . import resonance


class InvariantViolation(AssertionError):
    """A theorem-encoded internal check failed; indicates an implementation bug."""


def monomial_basis(deg: int) -> list[tuple[int, int, int]]:
    """All exponent triples (a, b, c) with a+b+c = deg, lexicographic order."""
    if deg < 0:
        return []
    return [(a, b, deg - a - b)
            for a in range(deg + 1) for b in range(deg - a + 1)]


def truncation_order(m_y: int, k: int, d: int) -> int:
    """Jets modulo vanishing order floor(m_y*k/d) - 1 survive at y."""
    return (m_y * k) // d - 1


def ideal_order(m_y: int, k: int, d: int) -> int:
    """Sections of the outer ideal vanish to order ceil(m_y*k/d) - 2 at y."""
    return -((-m_y * k) // d) - 2


def _jet_monomials(order: int) -> list[tuple[int, int]]:
    """Local monomials u^a v^b with a+b < order, by total degree then u-power."""
    return [(i, s - i) for s in range(order) for i in range(s, -1, -1)]


def _chart_data(point, chart: int):
    coords = point.coords
    if coords[chart].is_zero():
        raise ValueError("chart coordinate vanishes at the point")
    u_idx, v_idx = [i for i in range(3) if i != chart]
    inv = coords[chart].inverse()
    return u_idx, v_idx, coords[u_idx] * inv, coords[v_idx] * inv


def _taylor_entry(mono, chart_info, i: int, j: int):
    """Coefficient of u^i v^j in the chart expansion of the monomial at the point."""
    u_idx, v_idx, cu, cv = chart_info
    au, av = mono[u_idx], mono[v_idx]
    if i > au or j > av:
        return 0
    return comb(au, i) * comb(av, j) * cu ** (au - i) * cv ** (av - j)


def _charts_for(lattice: IncidenceLattice, charts) -> dict[int, int]:
    """Chart per sigma-point index; default is the largest nonzero coordinate."""
    chosen = {}
    for idx, p in enumerate(lattice.points):
        if p.multiplicity < 3:
            continue
        if charts is not None and idx in charts:
            chosen[idx] = charts[idx]
        else:
            chosen[idx] = max(i for i in range(3) if not p.point.coords[i].is_zero())
    return chosen


def jet_matrix(arr: Arrangement, lattice: IncidenceLattice, deg: int, k: int,
               ideal_constrained: bool, charts=None) -> Matrix:
    """The evaluation matrix whose cokernel dimension is one Hodge piece.

    Unconstrained (ideal_constrained=False): rows are truncated jets at every
    multiple point, columns the degree-(k-3) monomials.  Constrained: columns
    are a kernel basis of the outer-ideal conditions, rows the single graded
    jet layer at the points where m_y*k/d is an integer.
    """
    if deg != k - 3:
        raise ValueError("the evaluation maps are defined on degree k-3 forms")
    if ideal_constrained:
        mat, _, _ = _rho_matrix(arr, lattice, k, charts)
    else:
        mat, _ = _rho_tilde_matrix(arr, lattice, k, charts)
    return mat


def _rho_tilde_matrix(arr: Arrangement, lattice: IncidenceLattice, k: int,
                      charts=None):
    d = lattice.d
    basis = monomial_basis(k - 3)
    chart_of = _charts_for(lattice, charts)
    rows = []
    row_index = []
    for idx, p in enumerate(lattice.points):
        if p.multiplicity < 3:
            continue
        t = truncation_order(p.multiplicity, k, d)
        if t < 1:
            continue
        info = _chart_data(p.point, chart_of[idx])
        for (i, j) in _jet_monomials(t):
            rows.append([_taylor_entry(mono, info, i, j) for mono in basis])
            row_index.append((idx, i, j))
    mat = Matrix.from_rows(rows, cols=len(basis), order=arr.field_order)
    return mat, tuple(row_index)


def ideal_basis(arr: Arrangement, lattice: IncidenceLattice, deg: int, k: int,
                charts=None) -> list[tuple]:
    """Basis of the degree-``deg`` forms vanishing to the outer-ideal order at
    every multiple point, as coefficient vectors over monomial_basis(deg)."""
    d = lattice.d
    basis = monomial_basis(deg)
    chart_of = _charts_for(lattice, charts)
    rows = []
    for idx, p in enumerate(lattice.points):
        if p.multiplicity < 3:
            continue
        s = ideal_order(p.multiplicity, k, d)
        if s < 1:
            continue
        info = _chart_data(p.point, chart_of[idx])
        for (i, j) in _jet_monomials(s):
            rows.append([_taylor_entry(mono, info, i, j) for mono in basis])
    if not rows:
        return [tuple(1 if t == s else 0 for t in range(len(basis)))
                for s in range(len(basis))]
    constraints = Matrix.from_rows(rows, cols=len(basis), order=arr.field_order)
    return nullspace(constraints)


def _rho_matrix(arr: Arrangement, lattice: IncidenceLattice, k: int, charts=None):
    d = lattice.d
    basis = monomial_basis(k - 3)
    ideal = ideal_basis(arr, lattice, k - 3, k, charts)
    chart_of = _charts_for(lattice, charts)
    rows = []
    row_index = []
    for idx, p in enumerate(lattice.points):
        if p.multiplicity < 3:
            continue
        if (p.multiplicity * k) % d:
            continue
        level = (p.multiplicity * k) // d - 2
        if level < 0:
            continue
        info = _chart_data(p.point, chart_of[idx])
        for i in range(level, -1, -1):
            j = level - i
            functional = [_taylor_entry(mono, info, i, j) for mono in basis]
            rows.append([sum(f * vec[t] for t, f in enumerate(functional))
                         for vec in ideal])
            row_index.append((idx, i, j))
    mat = Matrix.from_rows(rows, cols=len(ideal), order=arr.field_order)
    return mat, tuple(row_index), ideal


def cokernel_dims(arr: Arrangement, lattice: IncidenceLattice, k: int,
                  charts=None) -> tuple[int, int]:
    """(cokernel of the unconstrained map, cokernel of the ideal-constrained map).

    The two numbers are equal when the implementation is correct; callers
    that want the failure recorded rather than raised compare them here.
    """
    tilde, _ = _rho_tilde_matrix(arr, lattice, k, charts)
    constrained, _, _ = _rho_matrix(arr, lattice, k, charts)
    return tilde.rows - rank(tilde), constrained.rows - rank(constrained)


def grf_dims(arr: Arrangement, lattice: IncidenceLattice, k: int,
             charts=None) -> tuple[int, int]:
    """(dim Gr_F^0, dim Gr_F^1) of the eigenspace at lambda = exp(2*pi*i*k/d)."""
    d = lattice.d
    if not 1 <= k <= d - 1:
        raise ValueError(f"k must be in [1, d-1]; k=0 (lambda=1) is the "
                         f"unipotent part, outside this computation")
    grf0 = _checked_coker(arr, lattice, k, charts)
    grf1 = _checked_coker(arr, lattice, d - k, charts)
    return grf0, grf1


def _checked_coker(arr, lattice, k, charts=None) -> int:
    tilde, constrained = cokernel_dims(arr, lattice, k, charts)
    if tilde != constrained:
        raise InvariantViolation(
            f"cokernel mismatch at k={k}: unconstrained {tilde} != constrained "
            f"{constrained}")
    return tilde


def precheck_vanishing(lattice: IncidenceLattice, k: int) -> tuple[bool, bool]:
    """(some multiple point has lambda^{m_y} = 1, every line contains one).

    If either is False the eigenspace must vanish, so any nonzero computed
    dimension is an invariant violation.
    """
    d = lattice.d
    sigma_k = lattice.sigma_k(k)
    has_point = bool(sigma_k)
    covered = set()
    for p in sigma_k:
        covered.update(p.lines)
    every_line = len(covered) == d
    return has_point, every_line


@dataclass(frozen=True)
class EigenReport:
    """Everything computed for one eigenvalue lambda = exp(2*pi*i*k/d)."""

    k: int
    k_conj: int
    lam: str
    sigma_k_size: int
    precheck_point: bool
    precheck_lines: bool
    grf0: int
    grf1: int
    b1: int
    aomoto: int | None = None
    aomoto_certificate: dict | None = None

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "k_conj": self.k_conj,
            "lambda_exponent": self.lam,
            "sigma_k_size": self.sigma_k_size,
            "precheck_point": self.precheck_point,
            "precheck_lines": self.precheck_lines,
            "grf0": self.grf0,
            "grf1": self.grf1,
            "b1": self.b1,
            "aomoto": self.aomoto,
            "aomoto_certificate": self.aomoto_certificate,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EigenReport":
        cert = data.get("aomoto_certificate")
        return cls(k=data["k"], k_conj=data["k_conj"], lam=data["lambda_exponent"],
                   sigma_k_size=data["sigma_k_size"],
                   precheck_point=data["precheck_point"],
                   precheck_lines=data["precheck_lines"],
                   grf0=data["grf0"], grf1=data["grf1"], b1=data["b1"],
                   aomoto=data.get("aomoto"), aomoto_certificate=cert)


def _lambda_exponent(k: int, d: int) -> str:
    g = gcd(k, d)
    return f"{k // g}/{d // g}"


def _aomoto_certificates(lattice: IncidenceLattice, cap: int,
                         dist: int | None) -> dict[int, tuple[int, frozenset, str]]:
    """For each low k, the first subset passing the residue check, resolved to
    the (k, I) the Aomoto computation should actually use: the branch avoiding
    negative integers routes through d-k and the complementary subset."""
    d = lattice.d
    certs = {}
    for k in range(1, d // 2 + 1):
        try:
            found = resonance.search_residue_subset(lattice, k, cap=cap)
        except resonance.SearchCapExceeded:
            return {}
        if found is None:
            continue
        I, verdict = found
        if verdict.branch == "avoids_positive":
            certs[k] = (k, I, verdict.branch)
        else:
            certs[k] = (d - k, frozenset(range(d)) - I, verdict.branch)
    return certs


def spectrum_with_checks(arr: Arrangement, lattice: IncidenceLattice | None = None,
                         with_aomoto: bool = True,
                         cap: int = resonance.DEFAULT_SEARCH_CAP,
                         dist: int | None = None):
    """All per-k reports plus the raw cokernel agreement records.

    Returns (reports, agreements) where agreements is a list of
    (k, unconstrained cokernel, constrained cokernel) triples.
    """
    if lattice is None:
        lattice = build_lattice(arr)
    d = lattice.d
    cokers = {}
    agreements = []
    for k in range(1, d):
        pair = cokernel_dims(arr, lattice, k)
        cokers[k] = pair
        agreements.append((k, pair[0], pair[1]))
    certs = _aomoto_certificates(lattice, cap, dist) if with_aomoto else {}
    reports = []
    for k in range(1, d):
        pre_point, pre_lines = precheck_vanishing(lattice, k)
        grf0 = cokers[k][0]
        grf1 = cokers[d - k][0]
        aomoto = None
        certificate = None
        low = min(k, d - k)
        if low in certs:
            k_eff, I_eff, branch = certs[low]
            weights = resonance.weights_from_kI(d, k_eff, I_eff)
            aomoto = resonance.aomoto_h1(lattice, weights, dist)
            certificate = {
                "searched_k": low,
                "k": k_eff,
                "I": sorted(I_eff),
                "branch": branch,
            }
        reports.append(EigenReport(
            k=k, k_conj=d - k, lam=_lambda_exponent(k, d),
            sigma_k_size=len(lattice.sigma_k(k)),
            precheck_point=pre_point, precheck_lines=pre_lines,
            grf0=grf0, grf1=grf1, b1=grf0 + grf1,
            aomoto=aomoto, aomoto_certificate=certificate))
    return reports, agreements


def full_spectrum(arr: Arrangement, lattice: IncidenceLattice | None = None,
                  with_aomoto: bool = True,
                  cap: int = resonance.DEFAULT_SEARCH_CAP,
                  dist: int | None = None) -> list[EigenReport]:
    """One EigenReport per k in [1, d-1]; raises InvariantViolation if the two
    cokernel computations ever disagree."""
    reports, agreements = spectrum_with_checks(arr, lattice, with_aomoto, cap, dist)
    for k, tilde, constrained in agreements:
        if tilde != constrained:
            raise InvariantViolation(
                f"cokernel mismatch at k={k}: {tilde} != {constrained}")
    return reports
