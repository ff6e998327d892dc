"""Command-line front end: ``verify``, ``eval`` and ``list-suites``."""

import argparse
import sys

from . import kernel
from .errors import DomainError
from .geometry import COORD_NAMES, SYSTEMS, ChiInput, CoordSystem, chi, recip_distance, to_cartesian
from .harness import (EXIT_CONFIG, EXIT_NUMERICAL, ConfigError, config_from_mapping,
                      exit_code, parse_config, report_to_csv, report_to_json, run_suite)
from .identities import PARAM_NAMES, IdentityId, default_domain, heine_sum
from .legendre import (chebyshev_t, ferrers_p, legendre_p_real, legendre_poly,
                       legendre_q_real)


def _chi(a):
    tag = a.pop("system")
    names = COORD_NAMES[tag]
    first, second = {}, {}
    for name in names:
        # missing angles default to zero; radial coordinates are required
        first[name] = a.pop(name, 0.0)
        second[name] = a.pop(name + "2", 0.0)
    return chi(ChiInput(CoordSystem(tag, a.pop("a", 1.0)), first, second))


def _recip(a):
    tag = a.pop("system")
    names = COORD_NAMES[tag] + ("phi",)
    sysm = CoordSystem(tag, a.pop("a", 1.0))
    first = {n: a.pop(n, 0.0) for n in names}
    second = {n: a.pop(n + "2", 0.0) for n in names}
    return recip_distance(to_cartesian(sysm, first), to_cartesian(sysm, second))


def _q(a):
    zm1 = a.pop("zm1", None)
    z = a.pop("arg", None)
    if z is None and zm1 is None:
        raise DomainError("legendre_q needs --arg or --zm1")
    return legendre_q_real(a.pop("deg"), a.pop("ord", 0.0), z, zm1=zm1)


# name -> (callable on the argument dict, integer-valued keys, description)
FUNCTIONS = {
    "legendre_q": (_q, (), "Q^ord_deg(arg), arg > 1 (or --zm1 = arg - 1)"),
    "legendre_p": (lambda a: legendre_p_real(a.pop("deg"), a.pop("ord", 0), a.pop("arg")),
                   ("ord",), "P^ord_deg(arg), arg > 1, integer or half-integer degree"),
    "ferrers_p": (lambda a: ferrers_p(a.pop("n"), a.pop("m", 0), a.pop("x")),
                  ("n", "m"), "Ferrers P_n^m(x), |x| <= 1"),
    "legendre_poly": (lambda a: legendre_poly(a.pop("n"), a.pop("x")), ("n",), "P_n(x)"),
    "chebyshev_t": (lambda a: chebyshev_t(a.pop("n"), a.pop("x")), ("n",), "T_n(x)"),
    "chi": (_chi, (), "Legendre argument of two points: --system TAG, coordinates and their '2' twins"),
    "recip_distance": (_recip, (), "1/|x - x'| for two points given as for chi (plus phi, phi2)"),
    "bessel_j": (lambda a: kernel.bessel_j(a.pop("nu"), a.pop("x")), (), "J_nu(x)"),
    "bessel_i": (lambda a: kernel.bessel_i(a.pop("nu"), a.pop("x")), (), "I_nu(x)"),
    "bessel_k": (lambda a: kernel.bessel_k(a.pop("nu"), a.pop("x")), (), "K_nu(x)"),
    "hyp2f1": (lambda a: kernel.gauss_2f1(a.pop("a"), a.pop("b"), a.pop("c"), a.pop("z")),
               (), "Gauss 2F1(a, b; c; z)"),
    "ellipk": (lambda a: kernel.ellipk_agm(a.pop("kp"))[0], (), "K with complementary modulus kp"),
    "ellipe": (lambda a: kernel.ellipk_agm(a.pop("kp"))[1], (), "E with complementary modulus kp"),
    "gamma_ratio": (lambda a: kernel.gamma_ratio(a.pop("a"), a.pop("b")), (), "Gamma(a)/Gamma(b)"),
    "heine_sum": (lambda a: heine_sum(a.pop("z"), a.pop("x")), (), "Chebyshev series for 1/sqrt(z - x)"),
}


def _format_value(v):
    v = complex(v)
    if v.imag == 0.0:
        return repr(v.real)
    return f"{v.real!r} {v.imag!r}j" if v.imag < 0 else f"{v.real!r} +{v.imag!r}j"


def _parse_pairs(tokens):
    """Turn ``--key value`` tokens into a dict of floats (system stays text)."""
    out = {}
    it = iter(tokens)
    for tok in it:
        if not tok.startswith("--"):
            raise DomainError(f"expected --key, got {tok!r}")
        key = tok[2:].replace("-", "_")
        try:
            val = next(it)
        except StopIteration:
            raise DomainError(f"--{key} needs a value") from None
        out[key] = val
    return out


def eval_function(name, args):
    """Evaluate one function of the published vocabulary; returns the value."""
    if name not in FUNCTIONS:
        raise DomainError(f"unknown function {name!r}; choose from {sorted(FUNCTIONS)}")
    fn, ints, _ = FUNCTIONS[name]
    a = {}
    for k, v in args.items():
        if k == "system":
            if v not in SYSTEMS:
                raise DomainError(f"unknown coordinate system {v!r}")
            a[k] = v
            continue
        try:
            x = float(v)
        except (TypeError, ValueError):
            raise DomainError(f"--{k}: not a number: {v!r}") from None
        if k in ints:
            if x != int(x):
                raise DomainError(f"--{k} must be an integer")
            x = int(x)
        a[k] = x
    try:
        val = fn(a)
    except KeyError as exc:
        raise DomainError(f"{name}: missing argument --{exc.args[0]}") from None
    if a:
        raise DomainError(f"{name}: unexpected argument(s) {sorted(a)}")
    return val


def _build_parser():
    p = argparse.ArgumentParser(prog="legendre-integrals",
                                description="Verify Legendre-function integral identities.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity sweeps and write a report")
    v.add_argument("--config", help="JSON config document")
    v.add_argument("--suite", action="append", help="identity id (repeatable)")
    v.add_argument("--cases", type=int, help="cases per suite")
    v.add_argument("--seed", type=int)
    v.add_argument("--tol", type=float)
    v.add_argument("--out", help="report path (default: stdout)")
    v.add_argument("--format", choices=("json", "csv"))
    v.add_argument("--jobs", help="worker processes, or 'auto'")
    v.add_argument("--timing", action="store_true", help="record wall-clock times")
    v.add_argument("--quiet", action="store_true", help="no summary on stderr")

    e = sub.add_parser("eval", help="evaluate one function, e.g. eval legendre_q --deg 0 --ord 0 --arg 2")
    # the function name may also come first as a bare word; everything else
    # is read as --key value pairs
    e.add_argument("--fn", help="function name")

    ls = sub.add_parser("list-suites", help="list identity ids, parameters and sampling boxes")
    ls.add_argument("--verbose", action="store_true")

    sub.add_parser("list-functions", help="list the eval vocabulary")
    return p


def _verify(ns, out, err):
    try:
        base = _config_from_file(ns.config)
        over = {}
        if ns.suite:
            over["suites"] = ns.suite
        if ns.cases is not None:
            over["cases_per_suite"] = ns.cases
        if ns.seed is not None:
            over["seed"] = ns.seed
        if ns.tol is not None:
            over["tol"] = ns.tol
        if ns.out is not None:
            over["output"] = ns.out
        if ns.format is not None:
            over["format"] = ns.format
        if ns.jobs is not None:
            over["parallelism"] = ns.jobs if ns.jobs == "auto" else _as_int(ns.jobs)
        if ns.timing:
            over["timing"] = True
        cfg = config_from_mapping(over, base)
    except ConfigError as exc:
        print(f"config error: {exc}", file=err)
        return EXIT_CONFIG
    try:
        report = run_suite(cfg)
    except Exception as exc:  # noqa: BLE001 - any crash is a numerical failure
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=err)
        return EXIT_NUMERICAL
    text = report_to_json(report) if cfg.format == "json" else report_to_csv(report)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    if not ns.quiet:
        for sid, s in report.summary["suites"].items():
            flag = "PASS" if s["suite_pass"] else "FAIL"
            print(f"{flag} {sid}: {s['passed']}/{s['cases']} "
                  f"worst rel_error {s['worst_rel_error']:.2e}", file=err)
    return exit_code(report)


def _as_int(text):
    try:
        return int(text)
    except ValueError:
        raise ConfigError("$.parallelism", f"expected an integer or 'auto', got {text!r}") from None


def _config_from_file(path):
    if path is None:
        return parse_config("")
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError("$", f"cannot read {path}: {exc}") from None


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    ns, rest = parser.parse_known_args(argv)
    if ns.command != "eval" and rest:
        parser.error(f"unrecognized arguments: {' '.join(rest)}")
    if ns.command == "verify":
        return _verify(ns, out, err)
    if ns.command == "list-suites":
        for ident in IdentityId:
            print(f"{ident}  ({', '.join(PARAM_NAMES[ident])})", file=out)
            if ns.verbose:
                d = default_domain(ident)
                for k, (kind, lo, hi) in d.box.items():
                    print(f"    {k}: {kind} [{lo:g}, {hi:g}]", file=out)
                for g in d.guards:
                    print(f"    guard: {g}", file=out)
                if d.near_singular:
                    print(f"    near-singular: {d.near_singular}", file=out)
        return 0
    if ns.command == "list-functions":
        for name, (_, _, desc) in FUNCTIONS.items():
            print(f"{name}: {desc}", file=out)
        return 0
    # eval
    name = ns.fn
    if name is None and rest and not rest[0].startswith("--"):
        name = rest.pop(0)
    if name is None:
        print("eval: give a function name (positional or --fn)", file=err)
        return EXIT_CONFIG
    try:
        val = eval_function(name, _parse_pairs(rest))
    except (DomainError, ArithmeticError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG
    print(_format_value(val), file=out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
