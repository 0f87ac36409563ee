"""Generation certificates: build, serialize, re-verify, sweep.

A certificate stores the inputs (p, m, h, g, omega and how omega was
chosen) together with every derived object and check outcome. ``verify``
trusts none of the derived data: it rebuilds everything from the inputs and
compares.

Encoding (canonical JSON, sorted keys, no whitespace):

* integers other than field digits are decimal strings;
* a GF(q) element is the list of its m digits mod p, lowest degree first;
* a GF(q^11) element is a list of 11 GF(q) encodings;
* polynomials are lists of coefficients, lowest degree first;
* matrices are row-major lists of rows.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Any, Optional

from . import repcheck
from .arith import FactoredInteger, compute_Q, factorize, is_prime, prime_power_split
from .gf import (
    EXT_DEGREE,
    GF,
    AlphaVector,
    DescentError,
    FieldSpec,
    alpha11_power_identity,
    canonical_field,
    find_omega,
    is_irreducible,
    min_poly_of_omega,
    min_poly_oracle,
    multiplicative_order,
    poly_eval,
    poly_mul,
)
from .matgen import (
    ConstructionError,
    GeneratorTriple,
    Mat,
    Subspace,
    build_triple,
    char_poly,
    det,
    order_with_certified_exponent,
)

SCHEMA_VERSION = "sl12gen-certificate/1"


class CertificateFormatError(ValueError):
    """A certificate field could not be decoded; ``path`` locates it."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# -- encoding ----------------------------------------------------------------


def _enc_elem(F: GF, a: int) -> list:
    return F.digits(a)


def _enc_vec(F: GF, v) -> list:
    return [F.digits(a) for a in v]


def _enc_mat(m: Mat) -> list:
    return [_enc_vec(m.F, r) for r in m.rows]


def _enc_subspace(F: GF, W: Subspace) -> dict:
    return {"dim": str(W.dim), "basis": [_enc_vec(F, r) for r in W.basis]}


def _enc_factored(fi: FactoredInteger) -> list:
    return [[str(p), str(e)] for p, e in fi.factors]


def _dec_int(value, path: str) -> int:
    if not isinstance(value, str) or not value.isdigit():
        raise CertificateFormatError(path, f"expected a decimal string, got {value!r}")
    return int(value)


def _dec_list(value, path: str, length: Optional[int] = None) -> list:
    if not isinstance(value, list):
        raise CertificateFormatError(path, f"expected a list, got {type(value).__name__}")
    if length is not None and len(value) != length:
        raise CertificateFormatError(path, f"expected {length} entries, got {len(value)}")
    return value


def _dec_digit(value, p: int, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < p:
        raise CertificateFormatError(path, f"expected a digit in [0, {p}), got {value!r}")
    return value


def _dec_elem(F: GF, value, path: str) -> int:
    ds = _dec_list(value, path, F.m)
    return F.from_digits([_dec_digit(d, F.p, f"{path}[{i}]") for i, d in enumerate(ds)])


def _dec_vec(F: GF, value, path: str, length: Optional[int] = None) -> tuple:
    return tuple(_dec_elem(F, a, f"{path}[{i}]") for i, a in enumerate(_dec_list(value, path, length)))


def _dec_mat(F: GF, value, path: str) -> Mat:
    rows = _dec_list(value, path, 12)
    return Mat(F, [_dec_vec(F, r, f"{path}[{i}]", 12) for i, r in enumerate(rows)])


def _dec_factored(value, path: str) -> list:
    out = []
    for i, pair in enumerate(_dec_list(value, path)):
        pair = _dec_list(pair, f"{path}[{i}]", 2)
        out.append((_dec_int(pair[0], f"{path}[{i}][0]"), _dec_int(pair[1], f"{path}[{i}][1]")))
    return out


def _enc_mode(mode) -> dict:
    if mode == "deterministic":
        return {"kind": "deterministic"}
    return {"kind": "seeded", "seed": str(_seed(mode))}


def _seed(mode) -> int:
    if isinstance(mode, tuple):
        return int(mode[1])
    return int(mode)


def _dec_mode(value, path: str):
    if not isinstance(value, dict) or value.get("kind") not in ("deterministic", "seeded"):
        raise CertificateFormatError(path, f"unknown omega mode {value!r}")
    if value["kind"] == "deterministic":
        if set(value) != {"kind"}:
            raise CertificateFormatError(path, "deterministic mode takes no parameters")
        return "deterministic"
    if set(value) != {"kind", "seed"}:
        raise CertificateFormatError(path, "seeded mode needs exactly a seed")
    return ("seeded", _dec_int(value["seed"], f"{path}.seed"))


def canonical_dumps(obj: Any) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode("ascii")


# -- the instance pipeline -----------------------------------------------------


@dataclass
class Instance:
    """Everything derived from (p, m, h, g, omega) for one q."""

    spec: FieldSpec
    Q: int
    halved: bool
    factored_Q: FactoredInteger
    omega: tuple
    mode: Any
    f: tuple
    alpha: AlphaVector
    triple: GeneratorTriple
    checks: dict
    irreducibility: Optional[repcheck.IrreducibilityReport]
    spin: dict
    verdict: repcheck.GenerationVerdict


def _alpha11_class_ok(F: GF, a11: int, q: int) -> bool:
    if q == 3:
        return a11 == F.one
    if q == 7:
        return F.pow(a11, 3) == F.one and a11 != F.one
    return a11 != 0 and F.order(a11) == q - 1


def build_instance(spec: FieldSpec, omega: tuple, mode="deterministic") -> Instance:
    """Derive f, alpha, x, y, z from omega and run every check.

    Raises :class:`~sl12gen.matgen.ConstructionError` (or ``DescentError``)
    on internal-consistency failures; mathematical checks are recorded, not
    raised.
    """
    F, q = spec.F, spec.q
    Q, halved = compute_Q(q)
    factored_full = factorize(q**EXT_DEGREE - 1)
    factored_Q = factorize(Q)
    checks: dict[str, bool] = {}
    checks.update({name: False for name in spec.validate()})
    checks.setdefault("h_irreducible", True)
    checks.setdefault("g_irreducible", True)
    checks["omega_order_is_Q"] = multiplicative_order(omega, factored_full, spec) == Q

    f, alpha = min_poly_of_omega(omega, spec)
    checks["f_irreducible"] = is_irreducible(f, F)
    checks["min_poly_oracle_agrees"] = min_poly_oracle(omega, spec) == f
    checks["alpha11_is_norm"] = alpha11_power_identity(omega, alpha, spec)
    checks["alpha11_class"] = _alpha11_class_ok(F, alpha[11], q)

    triple = build_triple(F, alpha, check=False)
    x, y, z = triple.x, triple.y, triple.z
    checks["x_order_2"] = (x @ x).is_identity() and not x.is_identity()
    checks["y_order_3"] = (y @ y @ y).is_identity() and not y.is_identity()
    checks["det_x_is_1"] = det(x) == F.one
    checks["det_y_is_1"] = det(y) == F.one
    a11_inv = F.inv(alpha[11])
    checks["charpoly_z"] = char_poly(z) == poly_mul(F, (F.neg(a11_inv), F.one), f)
    checks["f_at_alpha11_inv_nonzero"] = poly_eval(F, f, a11_inv) != 0
    order_ok = order_with_certified_exponent(z, Q, factored_Q)

    report = None
    if checks["charpoly_z"] and checks["f_irreducible"] and checks["f_at_alpha11_inv_nonzero"]:
        report = repcheck.irreducibility_verdict(triple, f, spec)
        u = report.lattice[2]
        checks["lattice_size_4"] = len(set(report.lattice)) == 4
        checks["U_is_standard"] = u == Subspace.span(F, Mat.identity(F).rows[:11])
        checks["z_stable_lattice"] = all(repcheck.stability_check(W, z) for W in report.lattice)
        checks["U_not_y_stable"] = not repcheck.stability_check(u, y)
    else:
        for name in ("lattice_size_4", "U_is_standard", "z_stable_lattice", "U_not_y_stable"):
            checks[name] = False

    probe = z - Mat.scalar(F, a11_inv)
    spin = {
        "standard_basis": repcheck.spans_standard_basis(x, y),
        "norton": repcheck.norton_test([x, y], probe),
    }
    spin_irreducible = spin["standard_basis"] and spin["norton"]
    checks["spin_oracle_agrees"] = report is not None and spin_irreducible == report.irreducible

    verdict = repcheck.generation_verdict(report, order_ok, q, checks)
    return Instance(spec, Q, halved, factored_Q, tuple(omega), mode, f, alpha, triple,
                    dict(verdict.checks), report, spin, verdict)


# -- certificate model -------------------------------------------------------


def _enc_irreducibility(F: GF, report: Optional[repcheck.IrreducibilityReport]):
    if report is None:
        return None
    witness = None
    if report.witness is not None:
        witness = str(report.lattice.index(report.witness))
    return {
        "lattice": [_enc_subspace(F, W) for W in report.lattice],
        "y_stable": list(report.y_stable),
        "x_stable": list(report.x_stable),
        "common_eigen": [
            {
                "lambda": _enc_elem(F, r.lam),
                "nu": _enc_elem(F, r.nu),
                "intersection_dim": str(r.intersection_dim),
                "witness": None if r.witness is None else _enc_vec(F, r.witness),
            }
            for r in report.common_eigen
        ],
        "verdict": report.verdict,
        "witness_index": witness,
    }


@dataclass
class Certificate:
    """JSON-level view of a certificate; every field is already encoded."""

    schema_version: str
    p: str
    m: str
    q: str
    h: list
    g: list
    Q: str
    halved: bool
    factored_Q: list
    omega: list
    omega_mode: dict
    f: list
    alpha: list
    x: list
    y: list
    z: list
    reports: dict
    assumption: dict

    @classmethod
    def from_instance(cls, inst: Instance) -> "Certificate":
        spec, F = inst.spec, inst.spec.F
        return cls(
            schema_version=SCHEMA_VERSION,
            p=str(spec.p),
            m=str(spec.m),
            q=str(spec.q),
            h=list(spec.h),
            g=_enc_vec(F, spec.g),
            Q=str(inst.Q),
            halved=inst.halved,
            factored_Q=_enc_factored(inst.factored_Q),
            omega=_enc_vec(F, inst.omega),
            omega_mode=_enc_mode(inst.mode),
            f=_enc_vec(F, inst.f),
            alpha=_enc_vec(F, inst.alpha.values),
            x=_enc_mat(inst.triple.x),
            y=_enc_mat(inst.triple.y),
            z=_enc_mat(inst.triple.z),
            reports=_enc_reports(inst),
            assumption=assumption_record(),
        )

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        if not isinstance(data, dict):
            raise CertificateFormatError("$", "certificate must be a JSON object")
        names = {f.name for f in fields(cls)}
        missing = names - set(data)
        extra = set(data) - names
        if missing:
            raise CertificateFormatError("$", f"missing fields {sorted(missing)}")
        if extra:
            raise CertificateFormatError("$", f"unknown fields {sorted(extra)}")
        return cls(**data)

    def to_json(self) -> bytes:
        return canonical_dumps(self.to_dict())

    @classmethod
    def from_json(cls, raw) -> "Certificate":
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError("$", f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    @property
    def conclusion(self) -> str:
        return self.reports["verdict"]["conclusion"]


def assumption_record() -> dict:
    return {"id": repcheck.AS1_ID, "text": repcheck.AS1_TEXT, "citation": repcheck.AS1_CITATION}


def _enc_reports(inst: Instance) -> dict:
    F = inst.spec.F
    v = inst.verdict
    return {
        "checks": dict(inst.checks),
        "irreducibility": _enc_irreducibility(F, inst.irreducibility),
        "spin": dict(inst.spin),
        "verdict": {"q_class": v.q_class, "conclusion": v.conclusion, "failed": list(v.failed)},
    }


def generate(p: int, m: int, omega_mode="deterministic") -> Certificate:
    """Build and check the generator pair for q = p^m; returns the certificate."""
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if m < 1:
        raise ValueError("m must be >= 1")
    spec = canonical_field(p, m)
    q = spec.q
    Q, _ = compute_Q(q)
    factored_full = factorize(q**EXT_DEGREE - 1)
    if omega_mode != "deterministic":
        omega_mode = ("seeded", _seed(omega_mode))
    omega = find_omega(spec, Q, factored_full, omega_mode)
    return Certificate.from_instance(build_instance(spec, omega, omega_mode))


def generate_q(q: int, omega_mode="deterministic") -> Certificate:
    p, m = prime_power_split(q)
    return generate(p, m, omega_mode)


# -- verification --------------------------------------------------------------


@dataclass
class VerifyResult:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify(cert) -> VerifyResult:
    """Re-derive every check from p, m, h, g, omega and the omega mode.

    Returns a :class:`VerifyResult` naming each failed check. Malformed
    encodings raise :class:`CertificateFormatError` with a field path.
    """
    if isinstance(cert, dict):
        cert = Certificate.from_dict(cert)
    failures: list[str] = []

    def done():
        return VerifyResult(not failures, failures)

    if cert.schema_version != SCHEMA_VERSION:
        failures.append("schema_version")
        return done()

    p = _dec_int(cert.p, "p")
    m = _dec_int(cert.m, "m")
    q = _dec_int(cert.q, "q")
    if not is_prime(p):
        failures.append("p_prime")
    if m < 1:
        failures.append("m_positive")
    if failures:
        return done()
    if q != p**m:
        failures.append("q_consistency")
        q = p**m

    h = tuple(_dec_digit(d, p, f"h[{i}]") for i, d in enumerate(_dec_list(cert.h, "h")))
    if len(h) != m + 1 or h[-1] != 1:
        failures.append("h_degree")
        return done()
    prime_field = GF(p, (0, 1))
    if m > 1 and not is_irreducible(h, prime_field):
        failures.append("h_irreducible")
        return done()
    F = GF(p, h)
    g = _dec_vec(F, cert.g, "g")
    if len(g) != EXT_DEGREE + 1 or g[-1] != F.one:
        failures.append("g_degree")
        return done()
    if not is_irreducible(g, F):
        failures.append("g_irreducible")
        return done()
    spec = FieldSpec(p, m, h, g)

    Q, halved = compute_Q(q)
    if _dec_int(cert.Q, "Q") != Q:
        failures.append("Q")
    if cert.halved is not halved:
        failures.append("halved")
    stored_fac = _dec_factored(cert.factored_Q, "factored_Q")
    if tuple(stored_fac) != factorize(Q).factors or not all(is_prime(r) for r, _ in stored_fac):
        failures.append("factored_Q")

    mode = _dec_mode(cert.omega_mode, "omega_mode")
    omega = _dec_vec(F, cert.omega, "omega", EXT_DEGREE)
    if not any(omega):
        failures.append("omega_order")
        return done()
    factored_full = factorize(q**EXT_DEGREE - 1)
    if multiplicative_order(omega, factored_full, spec) != Q:
        failures.append("omega_order")
    elif find_omega(spec, Q, factored_full, mode) != omega:
        failures.append("omega_reproducible")

    try:
        inst = build_instance(spec, omega, mode)
    except (DescentError, ConstructionError) as exc:
        failures.append(f"rebuild: {exc}")
        return done()

    if _dec_vec(F, cert.f, "f", EXT_DEGREE + 1) != inst.f:
        failures.append("f")
    if _dec_vec(F, cert.alpha, "alpha", EXT_DEGREE) != inst.alpha.values:
        failures.append("alpha")
    for name in ("x", "y", "z"):
        if _dec_mat(F, getattr(cert, name), name) != getattr(inst.triple, name):
            failures.append(name)

    expected = _enc_reports(inst)
    stored = cert.reports
    if not isinstance(stored, dict):
        raise CertificateFormatError("reports", "expected an object")
    for key in ("checks", "irreducibility", "spin", "verdict"):
        if stored.get(key) != expected[key]:
            failures.append(f"reports.{key}")
    if set(stored) != set(expected):
        failures.append("reports")

    # the required outcome, independent of what was stored
    if inst.verdict.q_class != "excluded" and inst.verdict.conclusion != "generates":
        failures.extend(f"check:{name}" for name in inst.verdict.failed)
    if cert.assumption != assumption_record():
        failures.append("assumption")
    return done()


# -- sweep -----------------------------------------------------------------------


@dataclass
class SweepRow:
    q: int
    Q: Optional[int] = None
    halved: Optional[bool] = None
    checks: dict = field(default_factory=dict)
    conclusion: Optional[str] = None
    verified: Optional[bool] = None
    wall_time: float = 0.0
    error: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "q": str(self.q),
            "Q": None if self.Q is None else str(self.Q),
            "halved": self.halved,
            "checks": self.checks,
            "conclusion": self.conclusion,
            "verified": self.verified,
            "wall_time": round(self.wall_time, 3),
            "error": self.error,
        }


def sweep_one(q: int) -> SweepRow:
    start = time.perf_counter()
    row = SweepRow(q)
    try:
        cert = generate_q(q)
        result = verify(Certificate.from_json(cert.to_json()))
        row.Q = int(cert.Q)
        row.halved = cert.halved
        row.checks = dict(cert.reports["checks"])
        row.conclusion = cert.conclusion
        row.verified = result.ok
        if not result.ok:
            row.error = "verify failed: " + ", ".join(result.failures)
    except Exception as exc:  # recorded per row; the sweep carries on
        row.error = f"{type(exc).__name__}: {exc}"
    row.wall_time = time.perf_counter() - start
    return row


def sweep(q_list, jobs: int = 1) -> list[SweepRow]:
    """One row per q, in input order."""
    q_list = list(q_list)
    if jobs > 1 and len(q_list) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(sweep_one, q_list))
    return [sweep_one(q) for q in q_list]


def format_table(rows: list[SweepRow]) -> str:
    header = f"{'q':>5}  {'Q':>22}  {'halved':>6}  {'checks':>7}  {'verified':>8}  {'conclusion':<20}  {'time(s)':>7}"
    lines = [header, "-" * len(header)]
    for r in rows:
        if r.error and r.conclusion is None:
            lines.append(f"{r.q:>5}  ERROR: {r.error}")
            continue
        passed = sum(bool(v) for v in r.checks.values())
        lines.append(
            f"{r.q:>5}  {r.Q:>22}  {str(r.halved):>6}  {passed:>3}/{len(r.checks):<3}  "
            f"{str(r.verified):>8}  {r.conclusion:<20}  {r.wall_time:>7.2f}"
        )
        if r.error:
            lines.append(f"       {r.error}")
    return "\n".join(lines)
