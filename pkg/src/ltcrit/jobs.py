"""Job specifications: parsing key/value tables into validated requests and running them.

A job is a plain table (as read from TOML).  Polynomials are integer lists,
lowest degree first; rationals may be given as integers or strings such as
"-3/2".  Errors carry the dotted path of the offending key.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Callable, Optional

import sympy

from ltcrit.criterion import (
    prime_to_p_check,
    verdict_abelian,
    verdict_cohomology,
    verdict_general,
)
from ltcrit.errors import CapabilityError, InputError, InvalidArgument
from ltcrit.exact_algebra.algebraic import AlgebraicNumber
from ltcrit.exact_algebra.polynomials import IntPoly
from ltcrit.exact_algebra.rootiso import Box
from ltcrit.galois import DEFAULT_GALOIS_CAP, asserted_closure, field_from_defining, galois_closure_data
from ltcrit.lubin_tate import block_companion_matrix, dcris_charpoly, lt_contained_up_to_finite, lt_norm_compatible
from ltcrit.padics.fields import LocalFieldDesc, unramified, unramified_from_poly
from ltcrit.padics.padic import DEFAULT_PRECISION, MAX_PRECISION, PadicBall
from ltcrit.weil import is_weil_integer, is_weil_number

COMMANDS = (
    "verdict-abelian",
    "verdict-cohomology",
    "verdict-general",
    "weil",
    "charpoly",
    "lt-compare",
    "galois",
    "ell-check",
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAPABILITY = 0, 1, 2, 3


class JobError(InvalidArgument):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


@dataclass(frozen=True)
class Settings:
    precision: int = DEFAULT_PRECISION
    max_precision: int = MAX_PRECISION
    galois_cap: int = DEFAULT_GALOIS_CAP
    assert_galois: Optional[tuple[int, int]] = None
    format: str = "full"


# field readers


def _get(tbl: dict, key: str, path: str, required: bool = True, default: Any = None) -> Any:
    if not isinstance(tbl, dict):
        raise JobError(path, "expected a table")
    if key not in tbl:
        if required:
            raise JobError(f"{path}.{key}" if path else key, "missing")
        return default
    return tbl[key]


def _int(v: Any, path: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise JobError(path, f"expected an integer, got {v!r}")
    return v


def _rational(v: Any, path: str) -> Fraction:
    if isinstance(v, bool):
        raise JobError(path, f"expected a rational, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise JobError(path, f"expected an integer or a rational string such as \"-1/2\", got {v!r}")


def _int_list(v: Any, path: str) -> list[int]:
    if not isinstance(v, list) or not v:
        raise JobError(path, "expected a nonempty list of integers")
    return [_int(x, f"{path}[{i}]") for i, x in enumerate(v)]


def _rational_list(v: Any, path: str) -> list[Fraction]:
    if not isinstance(v, list):
        raise JobError(path, "expected a list")
    return [_rational(x, f"{path}[{i}]") for i, x in enumerate(v)]


def _wrap(path: str, fn: Callable[[], Any]) -> Any:
    try:
        return fn()
    except JobError:
        raise
    except InputError as ex:
        raise JobError(path, str(ex)) from ex


def parse_field(tbl: Any, path: str = "field") -> LocalFieldDesc:
    """Keys: p; optionally f or unramified_poly; e or eisenstein; or defining."""
    p = _int(_get(tbl, "p", path), f"{path}.p")
    if not sympy.isprime(p):
        raise JobError(f"{path}.p", f"{p} is not prime")
    if "defining" in tbl:
        P = IntPoly(_int_list(tbl["defining"], f"{path}.defining"))
        return _wrap(f"{path}.defining", lambda: field_from_defining(P, p))
    if "unramified_poly" in tbl:
        u = _int_list(tbl["unramified_poly"], f"{path}.unramified_poly")
        base = _wrap(f"{path}.unramified_poly", lambda: unramified_from_poly(p, u))
    else:
        f = _int(tbl.get("f", 1), f"{path}.f")
        base = _wrap(f"{path}.f", lambda: unramified(p, f))
    if "f" in tbl and _int(tbl["f"], f"{path}.f") != base.f:
        raise JobError(f"{path}.f", "disagrees with the degree of unramified_poly")
    f = base.f
    if "eisenstein" in tbl:
        raw = tbl["eisenstein"]
        if not isinstance(raw, list) or len(raw) < 2:
            raise JobError(f"{path}.eisenstein", "expected a list of at least two coefficients")
        coeffs = []
        for i, c in enumerate(raw):
            cp = f"{path}.eisenstein[{i}]"
            row = [_int(c, cp)] if not isinstance(c, list) else _int_list(c, cp)
            if len(row) > f:
                raise JobError(cp, f"more than f = {f} coordinates")
            coeffs.append(tuple(row + [0] * (f - len(row))))
        E = tuple(coeffs)
    else:
        e = _int(tbl.get("e", 1), f"{path}.e")
        if e < 1:
            raise JobError(f"{path}.e", "must be positive")
        zero = (0,) * f
        E = ((-p,) + (0,) * (f - 1),) + (zero,) * (e - 1) + ((1,) + (0,) * (f - 1),)
    if "e" in tbl and _int(tbl["e"], f"{path}.e") != len(E) - 1:
        raise JobError(f"{path}.e", "disagrees with the degree of the Eisenstein polynomial")
    return _wrap(path, lambda: LocalFieldDesc(p, base.unramified_poly, E))


def parse_algebraic(tbl: Any, p: Optional[int], path: str) -> AlgebraicNumber:
    """Keys: rational, or min_poly with padic_digits [padic_valuation, padic_radius] and/or complex_box."""
    if not isinstance(tbl, dict):
        raise JobError(path, "expected a table")
    if "rational" in tbl:
        q = _rational(tbl["rational"], f"{path}.rational")
        return AlgebraicNumber.rational(q, p)
    P = IntPoly(_int_list(_get(tbl, "min_poly", path), f"{path}.min_poly"))
    ball = None
    if "padic_digits" in tbl:
        if p is None:
            raise JobError(f"{path}.padic_digits", "no prime in context")
        digits = _int_list(tbl["padic_digits"], f"{path}.padic_digits")
        if any(not 0 <= d < p for d in digits):
            raise JobError(f"{path}.padic_digits", f"digits must lie in [0, {p})")
        val = _int(tbl.get("padic_valuation", 0), f"{path}.padic_valuation")
        ball = PadicBall.from_digits(p, digits, val)
        if "padic_radius" in tbl:
            ball = PadicBall(p, ball.center, _rational(tbl["padic_radius"], f"{path}.padic_radius"))
    box = None
    if "complex_box" in tbl:
        corners = _rational_list(tbl["complex_box"], f"{path}.complex_box")
        if len(corners) != 4:
            raise JobError(f"{path}.complex_box", "expected [re_lo, re_hi, im_lo, im_hi]")
        box = Box(*corners)
    return _wrap(path, lambda: AlgebraicNumber.make(P, box, ball))


def parse_uniformizer(tbl: Any, field: LocalFieldDesc, path: str, allow_local: bool = False):
    """An anchored algebraic number, or with ``allow_local`` tower coordinates ``coords``."""
    if tbl is None:
        if allow_local:
            return field.uniformizer()
        raise JobError(path, "missing")
    if allow_local and isinstance(tbl, dict) and "coords" in tbl:
        raw = tbl["coords"]
        if not isinstance(raw, list):
            raise JobError(f"{path}.coords", "expected nested lists of rationals")
        rows = [_rational_list(r, f"{path}.coords[{i}]") if isinstance(r, list)
                else [_rational(r, f"{path}.coords[{i}]")] for i, r in enumerate(raw)]
        return _wrap(f"{path}.coords", lambda: field.element(rows))
    return parse_algebraic(tbl, field.p, path)


def _galois_override(job: dict, settings: Settings, field: LocalFieldDesc):
    raw = job.get("assert_galois")
    if raw is not None:
        vals = _int_list(raw, "assert_galois")
        if len(vals) != 2:
            raise JobError("assert_galois", "expected [d_G, e_G]")
        return tuple(vals)
    return settings.assert_galois


# execution


@dataclass
class Outcome:
    status: int
    kind: str
    result: dict
    summary: str
    witnesses: list


def _verdict_outcome(cert) -> Outcome:
    status = EXIT_OK if cert.satisfied else EXIT_NEGATIVE
    wit = [w.weight if w.h is None else w.h for w in cert.witnesses]
    return Outcome(status, "verdict", cert.to_json(), cert.verdict, [str(w) for w in wit])


def execute(job: dict, settings: Settings = Settings()) -> Outcome:
    """Run one job table; raises InputError or CapabilityError on failure."""
    command = _get(job, "command", "")
    if command not in COMMANDS:
        raise JobError("command", f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    N, maxN, cap = settings.precision, settings.max_precision, settings.galois_cap
    prec = _int(job.get("precision", N), "precision")
    if prec < 4:
        raise JobError("precision", "must be at least 4")

    if command.startswith("verdict-"):
        field = parse_field(_get(job, "field", ""))
        pi = parse_uniformizer(_get(job, "pi", ""), field, "pi")
        galois = _galois_override(job, settings, field)
        common = dict(galois=galois, cap=cap, N=prec, max_N=maxN)
        if command == "verdict-abelian":
            return _verdict_outcome(verdict_abelian(field, pi, **common))
        if command == "verdict-cohomology":
            i = _int(_get(job, "i", ""), "i")
            r = _int(_get(job, "r", ""), "r")
            return _verdict_outcome(verdict_cohomology(field, pi, i, r, **common))
        S = _rational_list(_get(job, "S", ""), "S")
        h1 = _rational(_get(job, "h1", ""), "h1")
        h2 = _rational(_get(job, "h2", ""), "h2")
        r_int = job.get("r_integrality")
        r_int = None if r_int is None else _int(r_int, "r_integrality")
        return _verdict_outcome(verdict_general(field, pi, S, h1, h2, r_int, **common))

    if command == "weil":
        alpha = parse_algebraic(_get(job, "alpha", ""), job.get("p"), "alpha")
        q = _int(_get(job, "q", ""), "q")
        w = _rational(_get(job, "w", ""), "w")
        integer = bool(job.get("integer", False))
        v = (is_weil_integer if integer else is_weil_number)(alpha, q, w)
        res = v.to_json()
        res["kind"] = "weil"
        return Outcome(EXIT_OK if v.is_weil else EXIT_NEGATIVE, "weil", res, str(v.is_weil).lower(), [])

    if command == "charpoly":
        field = parse_field(_get(job, "field", ""))
        pi = parse_uniformizer(job.get("pi"), field, "pi", allow_local=True)
        D = dcris_charpoly(field, pi, prec)
        B = block_companion_matrix(field, pi, prec)
        k0 = field.unramified_layer()
        agree = all(x.agrees_with(k0.from_padic(y)) for x, y in zip(B.charpoly(), D.product))
        res = D.to_json()
        res.update({
            "kind": "charpoly",
            "block_companion": [[c.to_json() for c in row] for row in B.entries],
            "block_companion_agrees": agree,
        })
        return Outcome(EXIT_OK if agree else EXIT_NEGATIVE, "charpoly", res,
                       "agree" if agree else "disagree", [])

    if command == "lt-compare":
        k1 = parse_field(_get(job, "k1", ""), "k1")
        k2 = parse_field(_get(job, "k2", ""), "k2")
        pi1 = parse_uniformizer(job.get("pi1"), k1, "pi1", allow_local=True)
        pi2 = parse_uniformizer(job.get("pi2"), k2, "pi2", allow_local=True)
        mode = job.get("mode", "norm")
        if mode not in ("norm", "finite"):
            raise JobError("mode", "expected \"norm\" or \"finite\"")
        fn = lt_norm_compatible if mode == "norm" else lt_contained_up_to_finite
        c = _wrap("", lambda: fn(k1, pi1, k2, pi2, prec))
        res = c.to_json()
        res.update({"kind": "lt-compare", "mode": mode})
        return Outcome(EXIT_OK if c.holds else EXIT_NEGATIVE, "lt-compare", res,
                       str(c.holds).lower(), [] if c.M is None else [str(c.M)])

    if command == "galois":
        field = parse_field(_get(job, "field", ""))
        galois = _galois_override(job, settings, field)
        if galois is not None:
            g = asserted_closure(galois[0], galois[1], field)
        else:
            defining = job.get("defining")
            defining = None if defining is None else IntPoly(_int_list(defining, "defining"))
            g = galois_closure_data(field, defining, prec, cap)
        res = g.to_json()
        res["kind"] = "galois"
        return Outcome(EXIT_OK, "galois", res, f"d_G={g.d_G} e_G={g.e_G}", [])

    # ell-check
    P = _rational_list(_get(job, "P", ""), "P")
    q_L = _int(_get(job, "q_L", ""), "q_L")
    p = _int(_get(job, "p", ""), "p")
    chk = _wrap("P", lambda: prime_to_p_check(P, q_L, p))
    return Outcome(EXIT_OK if chk.nonvanishing else EXIT_NEGATIVE, "ell-check", chk.to_json(),
                   "nonvanishing" if chk.nonvanishing else "vanishing", [str(x) for x in chk.bad_primes])


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def inputs_hash(job: dict, settings: Settings) -> str:
    blob = canonical_json({"job": job, "settings": asdict(settings)})
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def run_job(job: dict, settings: Settings = Settings()) -> tuple[Outcome, Optional[str]]:
    """Like execute, but maps errors to exit statuses; returns (outcome, error message)."""
    try:
        return execute(job, settings), None
    except InputError as ex:
        return Outcome(EXIT_INPUT, "error", {"kind": "error", "class": type(ex).__name__, "message": str(ex)},
                       "input-error", []), str(ex)
    except CapabilityError as ex:
        return Outcome(EXIT_CAPABILITY, "error", {"kind": "error", "class": type(ex).__name__, "message": str(ex)},
                       "capability-error", []), str(ex)
