"""goldencalc command line.

Every subcommand prints to stdout in ``--format`` json, csv or plain.
Errors go to stderr as one JSON object; exit codes are 2 for usage errors,
3 for domain errors and 4 when precision is unachievable or a reported
residual misses its bound.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

import mpmath

from . import hydroimages, oscillator, qcalculus, quantumapps, sequences, series
from .errors import DomainError, PrecisionUnachievable
from .goldenfield import ComplexQuadratic, QuadraticNumber

EXIT_USAGE, EXIT_DOMAIN, EXIT_PRECISION = 2, 3, 4
DEFAULT_PRECISION = 128
DEFAULT_TRUNCATION = 100


class UsageError(Exception):
    pass


class ResidualMissed(Exception):
    def __init__(self, payload: str, message: str):
        super().__init__(message)
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# value parsing and formatting

def _quadratic(text: str) -> QuadraticNumber:
    try:
        return QuadraticNumber.coerce(Fraction(text))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return QuadraticNumber.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an element of Q(sqrt5): {text!r}")


def _coeff_list(text: str) -> list[QuadraticNumber]:
    return [_quadratic(t.strip()) for t in text.split(",") if t.strip()]


def _number(text: str):
    try:
        with mpmath.workprec(512):
            return mpmath.mpmathify(text.replace(" ", ""))
    except (ValueError, TypeError):
        pass
    try:
        q = Fraction(text)
        return mpmath.mpf(q.numerator) / q.denominator
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _pos_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def _digits(bits: int) -> int:
    return int(bits * 0.30103) + 2


def _num_str(v, bits: int) -> str:
    if isinstance(v, (int, Fraction, QuadraticNumber, ComplexQuadratic)):
        return str(v)
    if isinstance(v, mpmath.mpc) and v.imag == 0:
        v = v.real
    return mpmath.nstr(v, _digits(bits), strip_zeros=False)


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _emit(fmt: str, record: dict, rows: tuple | None = None, plain: str | None = None) -> str:
    """One record as json; rows (header, data) as csv; ``plain`` otherwise."""
    if fmt == "json":
        return json.dumps(record)
    if fmt == "csv":
        if rows is None:
            keys = list(record)
            return _csv(keys, [[record[k] for k in keys]])
        return _csv(*rows)
    if plain is not None:
        return plain
    return " ".join(f"{k}={v}" for k, v in record.items())


# ---------------------------------------------------------------------------
# commands; each returns the text to print

def cmd_seq(a) -> str:
    start = a.start
    vals = [sequences.fib_divisor(n, a.k) for n in range(start, start + a.n)]
    rec = {"k": a.k, "start": start, "values": [str(v) for v in vals]}
    rows = (["k", "n", "value"], [[a.k, start + i, str(v)] for i, v in enumerate(vals)])
    return _emit(a.format, rec, rows, " ".join(map(str, vals)))


def cmd_lucas(a) -> str:
    v = sequences.lucas(a.k)
    return _emit(a.format, {"k": a.k, "value": str(v)}, plain=str(v))


def cmd_fibonomial(a) -> str:
    v = sequences.fibonomial(a.n, a.m, a.k)
    return _emit(a.format, {"n": a.n, "m": a.m, "k": a.k, "value": str(v)}, plain=str(v))


def _poly_out(a, p: qcalculus.GoldenPolynomial, extra: dict) -> str:
    cs = [str(c) for c in p.coeffs] or ["0"]
    rec = {**extra, "coeffs": cs}
    rows = (["power", "coeff"], [[i, c] for i, c in enumerate(cs)])
    return _emit(a.format, rec, rows, " ".join(cs))


def cmd_binomial(a) -> str:
    p = qcalculus.golden_binomial(a.k, a.n, a.a, a.sign)
    return _poly_out(a, p, {"k": a.k, "n": a.n, "a": str(a.a), "sign": a.sign})


def cmd_derive(a) -> str:
    p = qcalculus.GoldenPolynomial(a.coeffs)
    for _ in range(a.times):
        p = qcalculus.golden_derivative_poly(a.k, p)
    return _poly_out(a, p, {"k": a.k, "times": a.times})


def cmd_taylor(a) -> str:
    data = qcalculus.golden_taylor(a.k, qcalculus.GoldenPolynomial(a.coeffs))
    cs = [str(c) for c in data]
    rows = (["n", "c_n"], [[i, c] for i, c in enumerate(cs)])
    return _emit(a.format, {"k": a.k, "taylor": cs}, rows, " ".join(cs))


def cmd_genfun(a) -> str:
    cs = series.generating_coeffs(a.k, a.truncation)
    rows = (["n", "coeff"], [[i, str(c)] for i, c in enumerate(cs)])
    return _emit(a.format, {"k": a.k, "coeffs": [str(c) for c in cs]}, rows,
                 " ".join(map(str, cs)))


def cmd_identities(a) -> str:
    reports = series.identity_suite(a.k, a.precision)
    if a.format == "csv":
        out = _csv(["id", "k", "x", "lhs", "rhs", "residual", "tail_bound"],
                   [[r.identity_id, r.k] + [_num_str(v, a.precision) for v in
                    (r.evaluation_point, r.lhs, r.rhs, r.residual, r.tail_bound)] for r in reports])
    elif a.format == "json":
        out = "\n".join(r.to_json() for r in reports)
    else:
        out = "\n".join(f"{r.identity_id} {mpmath.nstr(r.residual, 5)}" for r in reports)
    bad = [r.identity_id for r in reports if not r.passes(a.tol)]
    if bad:
        raise ResidualMissed(out, f"residual above {a.tol}: {', '.join(bad)}")
    return out


def cmd_exp(a) -> str:
    ev = series.golden_exp_eval(a.k, a.variant, a.x, a.truncation, a.precision)
    rec = {"k": a.k, "variant": a.variant, "x": _num_str(a.x, a.precision),
           "N": a.truncation, "value": _num_str(ev.value, a.precision),
           "tail_bound": _num_str(ev.tail_bound, a.precision)}
    return _emit(a.format, rec, plain=rec["value"])


def cmd_spectrum(a) -> str:
    if a.type == "boson":
        entries = oscillator.bosonic_spectrum(a.k, a.n)
    else:
        entries = oscillator.fermionic_spectrum(a.k, a.n, magnitude=a.magnitude)
    if not a.include_ground:
        entries = entries[1:]
    if a.format == "csv":
        return oscillator.spectrum_csv(a.k, entries).rstrip("\n")
    rec = {"k": a.k, "type": a.type, "unit": "hbar*omega/2",
           "levels": [{"n": e.n, "energy_halfquanta": str(e.energy_halfquanta)} for e in entries]}
    return _emit(a.format, rec, plain=" ".join(str(e.energy_halfquanta) for e in entries))


def cmd_semiclassical(a) -> str:
    approx = oscillator.semiclassical_energy(a.k, a.n, a.S, a.precision)
    exact = oscillator.bosonic_spectrum(a.k, a.n)[a.n].energy_halfquanta
    with mpmath.workprec(a.precision):
        err = abs(approx - exact)
    rec = {"k": a.k, "n": a.n, "S": a.S, "approx": _num_str(approx, a.precision),
           "exact": str(exact), "abs_error": _num_str(err, a.precision)}
    return _emit(a.format, rec, plain=rec["approx"])


def cmd_coherent(a) -> str:
    st = oscillator.coherent_state(a.k, a.beta, a.D, a.precision)
    if a.format == "csv":
        return _csv(["n", "re", "im"], [[i, _num_str(c.real, a.precision), _num_str(c.imag, a.precision)]
                                       for i, c in enumerate(st.amplitudes)])
    rec = {"k": a.k, "beta": _num_str(st.beta, a.precision), "D": a.D,
           "residual": _num_str(st.residual, a.precision),
           "norm_sum": _num_str(st.norm_sum, a.precision),
           "amplitudes": [_num_str(c, a.precision) for c in st.amplitudes]}
    return _emit(a.format, rec, plain=f"residual={rec['residual']}")


def cmd_bargman(a) -> str:
    p = oscillator.bargman_apply(a.k, qcalculus.GoldenPolynomial(a.coeffs))
    return _poly_out(a, p, {"k": a.k})


def _state_record(st: quantumapps.PureState) -> dict:
    return json.loads(st.to_json())


def cmd_qubit(a) -> str:
    st = quantumapps.fibonacci_multiqubit(a.k, a.n)
    probs = [str(p) for p in st.probabilities()]
    if a.format == "csv":
        return _csv(["basis", "amplitude", "probability"],
                    [[format(i, f"0{a.n}b"), str(amp), p]
                     for i, (amp, p) in enumerate(zip(st.amplitudes_unnorm, probs))])
    if a.format == "json":
        return st.to_json()
    return " ".join(str(x) for x in st.amplitudes_unnorm) + f" / sqrt({st.norm_sq})"


def cmd_concurrence(a) -> str:
    closed = quantumapps.concurrence_closed(a.k)
    rec = {"k": a.k, "closed": str(closed)}
    if a.k % 2:
        st = quantumapps.fibonacci_multiqubit(a.k, 2)
        w = quantumapps.concurrence_wootters(st, a.precision)
        rec["wootters"] = _num_str(w, a.precision)
        with mpmath.workprec(a.precision):
            rec["difference"] = _num_str(abs(w - mpmath.mpf(closed.numerator) / closed.denominator),
                                         a.precision)
    return _emit(a.format, rec, plain=str(closed))


def cmd_bell(a) -> str:
    states = quantumapps.bell_superpositions(a.k)
    conc = {name: quantumapps.concurrence_wootters(st, a.precision) for name, st in states.items()}
    if a.format == "json":
        rec = {"k": a.k, "states": {name: {**_state_record(st), "concurrence": _num_str(conc[name], a.precision)}
                                    for name, st in states.items()}}
        return json.dumps(rec)
    rows = [[name] + [str(x) for x in st.amplitudes_unnorm] + [str(st.norm_sq), _num_str(conc[name], 30)]
            for name, st in states.items()]
    if a.format == "csv":
        return _csv(["state", "a00", "a01", "a10", "a11", "norm_sq", "concurrence"], rows)
    return "\n".join(" ".join(r) for r in rows)


def _matrix_record(M: quantumapps.TwoByTwoOperator) -> list:
    return [[str(M.a), str(M.b)], [str(M.c), str(M.d)]]


def cmd_hecke(a) -> str:
    conj = None
    if a.conjugator:
        if len(a.conjugator) != 4:
            raise UsageError("--conjugator needs four entries a,b,c,d")
        conj = quantumapps.TwoByTwoOperator(*a.conjugator)
        if not conj.det():
            raise UsageError("--conjugator must be invertible")
    R = quantumapps.hecke_sample(a.k, conj)
    reduced = quantumapps.hecke_power(R, a.n, a.k)
    direct = R.power(a.n)
    fib = quantumapps.fibonacci_power_formula(R, a.n, a.k)
    rec = {"k": a.k, "n": a.n, "R": _matrix_record(R), "power": _matrix_record(reduced),
           "reduction_matches": reduced == direct, "fibonacci_form_matches": fib == direct}
    return _emit(a.format, rec, plain=json.dumps(rec["power"]))


def _flow_config(a) -> hydroimages.FlowConfig:
    return hydroimages.FlowConfig(a.z0, a.gamma, a.truncation, a.order, a.precision)


def cmd_hydro_field(a) -> str:
    cfg = _flow_config(a)
    pts = []
    for i in range(a.nx):
        for j in range(a.ny):
            x = a.xmin + (a.xmax - a.xmin) * i / max(a.nx - 1, 1)
            y = a.ymin + (a.ymax - a.ymin) * j / max(a.ny - 1, 1)
            pts.append(mpmath.mpc(x, y))
    rows = []
    for z in pts:
        try:
            v = hydroimages.velocity(cfg, z, a.flow)
        except DomainError:
            continue  # grid point on an image
        rows.append([_num_str(t, 53) for t in (z.real, z.imag, v.real, v.imag, abs(v))])
    header = ["x", "y", "ReV", "ImV", "absV"]
    if a.format == "json":
        return "\n".join(json.dumps(dict(zip(header, r))) for r in rows)
    if a.format == "csv":
        return _csv(header, rows)
    return "\n".join(" ".join(r) for r in rows)


def cmd_hydro_residual(a) -> str:
    cfg = _flow_config(a)
    r = hydroimages.periodicity_residual(cfg, a.z, a.flow)
    rec = {"flow": a.flow, "k": a.order, "N": a.truncation, "z": _num_str(a.z, a.precision),
           "residual": _num_str(r.residual, a.precision),
           "predicted_scale": _num_str(r.predicted_scale, a.precision)}
    out = _emit(a.format, rec, plain=rec["residual"])
    if not r.residual <= r.predicted_scale:
        raise ResidualMissed(out, "periodicity residual above the truncation scale")
    return out


# ---------------------------------------------------------------------------

def _default_precision() -> int:
    env = os.environ.get("GOLDENCALC_PRECISION")
    if env is None:
        return DEFAULT_PRECISION
    try:
        return _pos_int(env)
    except (ValueError, argparse.ArgumentTypeError):
        raise UsageError(f"GOLDENCALC_PRECISION must be a positive integer, got {env!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    common.add_argument("--precision", type=_pos_int, default=_default_precision())
    common.add_argument("--truncation", type=_pos_int, default=DEFAULT_TRUNCATION)

    p = _Parser(prog="goldencalc", description="Fibonacci-divisor calculus toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("seq", cmd_seq, "Fibonacci divisors F_n^(k)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=_pos_int, required=True, help="how many values")
    sp.add_argument("--start", type=int, default=1)

    sp = add("lucas", cmd_lucas, "Lucas number L_k")
    sp.add_argument("--k", type=int, required=True)

    sp = add("fibonomial", cmd_fibonomial, "k-th Fibonomial coefficient")
    sp.add_argument("--n", type=_nonneg_int, required=True)
    sp.add_argument("--m", type=_nonneg_int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = add("binomial", cmd_binomial, "Golden binomial (x -/+ a)^n_F coefficients")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=_nonneg_int, required=True)
    sp.add_argument("--a", type=_quadratic, default=QuadraticNumber(1))
    sp.add_argument("--sign", choices=("+", "-"), default="+")

    for name, fn, help_ in (("derive", cmd_derive, "Golden derivative of a polynomial"),
                            ("taylor", cmd_taylor, "Golden Taylor data of a polynomial"),
                            ("bargman", cmd_bargman, "z D_z applied to a polynomial")):
        sp = add(name, fn, help_)
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--coeffs", type=_coeff_list, required=True,
                        help="comma-separated coefficients from x^0 up; entries a or a+b*sqrt5")
        if name == "derive":
            sp.add_argument("--times", type=_nonneg_int, default=1)

    sp = add("genfun", cmd_genfun, "generating-function coefficients")
    sp.add_argument("--k", type=int, required=True)

    sp = add("identities", cmd_identities, "identity battery with residuals")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--tol", type=float, default=1e-25)

    sp = add("exp", cmd_exp, "Golden exponential partial sum")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--x", type=_number, required=True)
    sp.add_argument("--variant", choices=series.EXPONENTIAL_VARIANTS, default="e")

    sp = add("spectrum", cmd_spectrum, "oscillator energies in units of hbar*omega/2")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--type", choices=("boson", "fermion"), default="boson")
    sp.add_argument("--n", type=_pos_int, required=True, help="highest level")
    sp.add_argument("--magnitude", action="store_true", help="fermion energies as magnitudes")
    sp.add_argument("--include-ground", action="store_true", help="also print level 0")

    sp = add("semiclassical", cmd_semiclassical, "Bernoulli expansion of an energy level")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=_nonneg_int, required=True)
    sp.add_argument("--S", type=_pos_int, default=12)

    sp = add("coherent", cmd_coherent, "truncated coherent state")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--beta", type=_number, required=True)
    sp.add_argument("--D", type=_pos_int, default=40)

    sp = add("qubit", cmd_qubit, "Fibonacci n-qubit state")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=_pos_int, required=True)

    sp = add("concurrence", cmd_concurrence, "concurrence of the two-qubit state")
    sp.add_argument("--k", type=int, required=True)

    sp = add("bell", cmd_bell, "Bell superpositions of antipodal qubits")
    sp.add_argument("--k", type=int, required=True)

    sp = add("hecke", cmd_hecke, "R^n for a Hecke sample")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=_nonneg_int, required=True)
    sp.add_argument("--conjugator", type=_coeff_list, default=None)

    for name, fn in (("hydro-field", cmd_hydro_field), ("hydro-residual", cmd_hydro_residual)):
        sp = add(name, fn, "vortex image flow")
        sp.add_argument("--z0", type=_number, required=True)
        sp.add_argument("--gamma", type=_number, default=mpmath.mpf(1))
        sp.add_argument("--order", type=_pos_int, default=1, help="annulus order k")
        sp.add_argument("--flow", choices=("annulus", "wedge"), default="annulus")
        if name == "hydro-field":
            sp.add_argument("--xmin", type=float, default=-1.5)
            sp.add_argument("--xmax", type=float, default=1.5)
            sp.add_argument("--ymin", type=float, default=-1.5)
            sp.add_argument("--ymax", type=float, default=1.5)
            sp.add_argument("--nx", type=_pos_int, default=16)
            sp.add_argument("--ny", type=_pos_int, default=16)
        else:
            sp.add_argument("--z", type=_number, required=True)
    return p


def _fail(code: int, kind: str, message: str) -> int:
    print(json.dumps({"error": kind, "message": message, "exit_code": code}), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        out = args.func(args)
    except UsageError as e:
        return _fail(EXIT_USAGE, "UsageError", str(e))
    except ResidualMissed as e:
        print(e.payload)
        return _fail(EXIT_PRECISION, "ResidualMissed", str(e))
    except PrecisionUnachievable as e:
        return _fail(EXIT_PRECISION, type(e).__name__, str(e))
    except DomainError as e:
        return _fail(EXIT_DOMAIN, type(e).__name__, str(e))
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
