"""Verifiers that evaluate both sides of a homological identity exactly."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import linalg
from .algebra import GradedAlgebra, GradedAutomorphism, xi
from .constructions import (
    DEFAULT_SEED,
    _as_family,
    block_diagonal,
    eigenvalue_of,
    family_power,
    graded_twist,
    hi1_candidate,
    inner_witness,
    lift_nakayama,
    nakayama_of_quotient,
    normality_witness,
    ore_extension,
    quotient_by_normal,
    smash_product,
    tensor_automorphism,
    tensor_product,
)
from .errors import NoRuleAvailable, NotMultiplicative
from .free import NcPolynomial
from .koszul import (
    COMPUTED,
    as_index,
    homological_determinant,
    koszul_available,
    nakayama,
    nakayama_koszul,
)

VERIFICATION = "verification"
CONSISTENCY = "consistency"


def serialize(value):
    """Exact JSON-friendly form: scalars as strings, matrices as nested lists."""
    if isinstance(value, GradedAutomorphism):
        return linalg.format_matrix(value.matrix)
    if isinstance(value, dict):
        return {str(k): serialize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [serialize(v) for v in value]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


@dataclass
class Verdict:
    identity: str
    lhs: object
    rhs: object
    equal: bool
    mode: str
    provenance: list[str]
    checked_to: int
    details: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "equal": self.equal,
            "mode": self.mode,
            "lhs": serialize(self.lhs),
            "rhs": serialize(self.rhs),
            "provenance": list(self.provenance),
            "checked_to": self.checked_to,
            "details": serialize(self.details),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def summary(self) -> str:
        status = "EQUAL" if self.equal else "NOT EQUAL"
        return f"{self.identity} [{self.mode}] {status} (checked to degree {self.checked_to})"


def _uniq(items) -> list[str]:
    out = []
    for x in items:
        if x not in out:
            out.append(x)
    return out


def _mode(*sources) -> str:
    return VERIFICATION if all(s == COMPUTED for s in sources) else CONSISTENCY


# ---------- HI2 ----------

def hi2_rhs(A: GradedAlgebra, family, mu_A: GradedAutomorphism | None = None, ell=None):
    """``mu_A o sigma^l o xi_hdet(sigma)^-1`` and the data sources used."""
    fam = _as_family(A, family)
    prov = []
    if mu_A is None:
        mu_A, p = nakayama(A)
        prov.append(p)
    if ell is None:
        ell, p = as_index(A)
        prov.append(p)
    ell = (ell,) if isinstance(ell, int) else tuple(ell)
    hd = []
    for s in fam:
        h, p = homological_determinant(A, s)
        hd.append(h)
        prov.append(p)
    rhs = mu_A.on(A) if mu_A.algebra is not A else mu_A
    rhs = rhs.compose(family_power(fam, ell)).compose(xi(A, hd).inverse())
    return rhs, _uniq(prov)


def _registered_twist(A: GradedAlgebra, fam):
    for family, M in A.known.twist_nakayama:
        if len(family) == len(fam) and all(linalg.mat_equal(f, s.matrix) for f, s in zip(family, fam)):
            return M
    return None


def verify_hi2(A: GradedAlgebra, family, lhs_registry=None) -> Verdict:
    fam = _as_family(A, family)
    rhs, prov = hi2_rhs(A, fam)
    tw = graded_twist(A, fam)
    details = {"twist_relations": [tw.format(r) for r in tw.minimal_relations]}
    if lhs_registry is None:
        lhs_registry = _registered_twist(A, fam)
    if lhs_registry is not None:
        lhs = linalg.format_matrix(lhs_registry)
        lhs_mat = [[A.field(c) for c in row] for row in lhs_registry]
        prov = _uniq(prov + [A.known.provenance.get("twist_nakayama", "registry")])
        mode = CONSISTENCY
    elif koszul_available(tw):
        lhs_mat = nakayama_koszul(tw).matrix
        lhs = linalg.format_matrix(lhs_mat)
        prov = _uniq([COMPUTED] + prov)
        mode = _mode(*prov)
    else:
        raise NoRuleAvailable("the twist is not Koszul-certified and no registry value is known")
    equal = linalg.mat_equal(lhs_mat, rhs.matrix)
    return Verdict("HI2", lhs, rhs, equal, mode, prov, min(A.degree_bound, tw.degree_bound), details)


# ---------- HI3 ----------

def verify_hi3(A: GradedAlgebra) -> Verdict:
    mu, p1 = nakayama(A)
    h, p2 = homological_determinant(A, mu)
    return Verdict(
        "HI3", h, A.field.one, h == 1, _mode(p1, p2), _uniq([p1, p2]), A.degree_bound,
        {"nakayama": mu},
    )


# ---------- Ore extension ----------

def verify_ore_hdet(A: GradedAlgebra, phi: GradedAutomorphism) -> Verdict:
    lhs, p1 = homological_determinant(A, phi)
    C = ore_extension(A, phi)
    mu_C = nakayama_koszul(C)
    t = C.ngens - 1
    col = [mu_C.matrix[i][t] for i in range(C.ngens)]
    rhs = col[t]
    eigen = not any(c for i, c in enumerate(col) if i != t)
    details = {"extension_nakayama": mu_C, "t_is_eigenvector": eigen}
    return Verdict(
        "ORE-HDET", lhs, rhs, eigen and lhs == rhs, _mode(p1, COMPUTED), _uniq([p1, COMPUTED]),
        C.degree_bound, details,
    )


# ---------- centrality ----------

def verify_center(A: GradedAlgebra, sigmas: Sequence[GradedAutomorphism]) -> Verdict:
    mu, p = nakayama(A)
    lhs, rhs, failures = [], [], []
    for k, s in enumerate(sigmas):
        s = s if s.algebra is A else s.on(A)
        a, b = mu.compose(s), s.compose(mu)
        lhs.append(a)
        rhs.append(b)
        if a != b:
            failures.append(k)
    return Verdict(
        "CENTER", lhs, rhs, not failures, _mode(p), [p], A.degree_bound,
        {"nakayama": mu, "count": len(sigmas), "failures": failures},
    )


# ---------- HI1 (CY smash products) ----------

def verify_hi1_cy(A: GradedAlgebra, generators: Sequence[GradedAutomorphism], mu_A=None, hdet=None,
                  seed: int = DEFAULT_SEED, samples: int = 200, check_degree: int | None = None) -> Verdict:
    """Build ``A # kG`` and look for an inner witness of ``mu_A # Xi_hdet``."""
    prov = []
    if mu_A is None:
        mu_A, p = nakayama(A)
        prov.append(p)
    B = smash_product(A, generators, seed=seed, samples=samples, check_degree=check_degree)
    if hdet is None:
        chi = []
        for g in B.group:
            h, p = homological_determinant(A, g)
            chi.append(h)
            prov.append(p)
    else:
        chi = list(hdet)
    prov = _uniq(prov)
    mu_A = mu_A if mu_A.algebra is A else mu_A.on(A)
    details = {
        "group_order": B.order,
        "hdet": chi,
        "mu_in_group": any(g == mu_A for g in B.group),
        "hdet_trivial": all(c == 1 for c in chi),
        "seed": seed,
    }
    lhs = {"base_part": mu_A, "character": chi}
    try:
        rho = hi1_candidate(B, mu_A, chi, samples=samples, degree=check_degree)
    except NotMultiplicative as exc:
        details["diagnosis"] = f"candidate is not multiplicative ({exc}); mu_A does not commute with G"
        return Verdict("HI1-CY", lhs, None, False, _mode(*prov), prov, B.base.degree_bound, details)
    details["checked_pairs"] = rho.checked_pairs
    w = inner_witness(B, rho)
    details["solution_dimension"] = w.solution_dimension
    rhs = None
    if w.found:
        rhs = {"witness": B.format(w.unit), "coefficients": w.coefficients}
    else:
        details["diagnosis"] = "no degree-0 witness"
    return Verdict("HI1-CY", lhs, rhs, w.found, _mode(*prov), prov, B.base.degree_bound, details)


# ---------- tensor products ----------

def verify_tensor(A: GradedAlgebra, B: GradedAlgebra, sigma=None, tau=None) -> Verdict:
    AB = tensor_product(A, B)
    F = AB.field
    mu_A, p1 = nakayama(A)
    mu_B, p2 = nakayama(B)
    mu_AB = nakayama_koszul(AB)
    l_A, p3 = as_index(A)
    l_B, p4 = as_index(B)
    l_AB, _ = as_index(AB, source="koszul")
    lhs = {"nakayama": mu_AB, "as_index": list(l_AB), "as_index_total": sum(l_AB)}
    rhs = {
        "nakayama": linalg.format_matrix(block_diagonal(F, mu_A.matrix, mu_B.matrix)),
        "as_index": list(l_A) + list(l_B),
        "as_index_total": sum(l_A) + sum(l_B),
    }
    equal = linalg.mat_equal(mu_AB.matrix, block_diagonal(F, mu_A.matrix, mu_B.matrix))
    equal = equal and list(l_AB) == list(l_A) + list(l_B)
    prov = [COMPUTED, p1, p2, p3, p4]
    if sigma is not None and tau is not None:
        st = tensor_automorphism(AB, sigma, tau)
        h_AB, _ = homological_determinant(AB, st, source="koszul")
        h_A, p5 = homological_determinant(A, sigma)
        h_B, p6 = homological_determinant(B, tau)
        lhs["hdet"] = h_AB
        rhs["hdet"] = h_A * h_B
        equal = equal and h_AB == h_A * h_B
        prov += [p5, p6]
    prov = _uniq(prov)
    return Verdict("TENSOR", lhs, rhs, equal, _mode(*prov), prov, AB.degree_bound, {})


# ---------- quotients ----------

def verify_quotient(A: GradedAlgebra, z: NcPolynomial) -> Verdict:
    mu_A, p1 = nakayama(A)
    w = normality_witness(A, z, mu_A)
    q = quotient_by_normal(A, z)
    rhs = nakayama_of_quotient(q, mu_A, w.tau)
    lhs, p2 = nakayama(q.algebra)
    details = {
        "tau": w.tau,
        "mu_eigenvalue": w.eigenvalue,
        "quotient_generators": list(q.algebra.table.names),
        "quotient_relations": [q.algebra.format(r) for r in q.algebra.minimal_relations],
    }
    if len(q.kept) == A.ngens:
        lifted = lift_nakayama(q, lhs, w.tau)
        details["lifted_mu_A"] = lifted
        details["lift_matches_mu_A"] = lifted == mu_A
    prov = _uniq([p2, p1])
    return Verdict("QUOTIENT", lhs, rhs, lhs == rhs, _mode(p1, p2), prov, A.degree_bound, details)


def verify_hdet_descent(A: GradedAlgebra, z: NcPolynomial, sigma: GradedAutomorphism) -> Verdict:
    lam = eigenvalue_of(sigma, z)
    if lam is None:
        from .errors import NotEigenvector

        raise NotEigenvector("sigma(z) is not a multiple of z")
    normality_witness(A, z)
    q = quotient_by_normal(A, z)
    s_bar = q.restrict(sigma)
    h_A, p1 = homological_determinant(A, sigma)
    h_B, p2 = homological_determinant(q.algebra, s_bar)
    prov = _uniq([p1, p2])
    return Verdict(
        "HDET-DESCENT", h_A, lam * h_B, h_A == lam * h_B, _mode(p1, p2), prov, A.degree_bound,
        {"eigenvalue": lam, "restricted": s_bar, "hdet_quotient": h_B},
    )
