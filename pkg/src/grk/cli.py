"""Command-line front end.

Subcommands:

  gen       build a reflection matrix at one spectral point, emit JSON
  verify    reflection-algebra checks for a solution family
  check-r   R-matrix checks (Yang-Baxter and the property suite)
  sectors   per-sector condition sweep plus the reassembly consistency check
  catalog   list golden catalog ids / evaluate one item

Exit codes: 0 all checks pass, 1 a check failed, 2 bad flags,
3 singular family parameters or sampling failure.

Reports are canonical JSON (sorted keys, entries sorted by (row, col),
terms by generator mask, floats with 17 significant digits) so identical
argv + seed give identical bytes.  GRK_THREADS caps the worker threads
used for sample sweeps (default 1).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .supermatrix import GradingProfile, SuperMatrix
from .rmatrix import (
    RMatrixSpec,
    RATIONAL,
    TRIG,
    SingularWeightError,
    SpectralSampler,
    property_suite,
    ybe_residual,
)
from .reflection import (
    full_sector_sweep,
    k_plus,
    reflection_residual_norm,
    second_reflection_residual_norm,
)
from .solutions import (
    FAMILIES,
    FamilyParams,
    ParameterRangeError,
    SingularParameterError,
    build_k,
    make_registry,
)
from . import catalog as catalog_mod

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_SINGULAR = 3


def canonical_json(obj):
    """Deterministic JSON: sorted keys, floats at 17 significant digits."""
    out = []
    _write_canonical(obj, out)
    return "".join(out)


def _write_canonical(obj, out):
    if isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            out.append(json.dumps(str(key)))
            out.append(":")
            _write_canonical(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _write_canonical(item, out)
        out.append("]")
    elif isinstance(obj, bool) or obj is None:
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format(obj, ".17g"))
    elif isinstance(obj, complex):
        out.append("[" + format(obj.real, ".17g") + ","
                   + format(obj.imag, ".17g") + "]")
    else:
        out.append(json.dumps(obj))


def parse_complex(text):
    """RE or RE,IM or a Python complex literal like 0.5+0.2j."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    text = text.strip()
    if "," in text:
        re_s, im_s = text.split(",", 1)
        return complex(float(re_s), float(im_s))
    return complex(text.replace(" ", ""))


def parse_c_list(text):
    """--c accepts 'c0=1.3;c1=0.5' or '1.3;0.5+0.2j' (';' or whitespace
    separated; bare commas also work when entries are plain reals)."""
    if text is None:
        return ()
    items = [t for chunk in text.replace(";", " ").split()
             for t in ([chunk] if ("=" in chunk or "," not in chunk)
                       else chunk.split(","))]
    positional = {}
    next_idx = 0
    for item in items:
        if not item:
            continue
        if "=" in item:
            key, val = item.split("=", 1)
            key = key.strip().lower()
            if not key.startswith("c") or not key[1:].isdigit():
                raise ValueError(f"bad c parameter name {key!r}")
            positional[int(key[1:])] = parse_complex(val)
        else:
            positional[next_idx] = parse_complex(item)
            next_idx += 1
    if not positional:
        return ()
    size = max(positional) + 1
    return tuple(positional.get(i, 1.0 + 0j) for i in range(size))


def _family_params(args):
    c = parse_c_list(getattr(args, "c", None)) or (1.0 + 0j,)
    cg = ch = None
    grassmann = getattr(args, "grassmann", "auto")
    if grassmann not in (None, "auto"):
        with open(grassmann, encoding="utf-8") as fh:
            data = json.load(fh)
        loaded = FamilyParams.from_json_dict(
            {"family": args.family, "m": args.m, "n": args.n, **data})
        cg, ch = loaded.cg, loaded.ch
        if loaded.c and len(loaded.c) > len(c):
            c = loaded.c
    kwargs = {}
    for key, attr in (("q", "q"), ("q1", "q1"), ("q2", "q2"),
                      ("variant", "variant"), ("block", "block"),
                      ("L", "L"), ("ell", "l"), ("xi", "xi"),
                      ("nd_class", "nd_class")):
        val = getattr(args, attr, None)
        if val is not None:
            kwargs[key] = val
    for key in ("xi14_mode", "ii_slot_mode", "c4_mode", "mirror_mode"):
        val = getattr(args, key, None)
        if val is not None:
            kwargs[key] = val
    return FamilyParams(args.family, args.m, args.n, c=c, cg=cg, ch=ch,
                        **kwargs)


def _rspec_for(params, eta):
    kind = params.kind or RATIONAL
    return RMatrixSpec(kind, params.profile,
                       eta=eta if kind == TRIG else 0.0)


def _n_workers():
    try:
        cap = int(os.environ.get("GRK_THREADS", "1"))
    except ValueError:
        cap = 1
    return max(1, cap)


def _map_samples(fn, items):
    workers = _n_workers()
    if workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _emit(args, report, failed):
    if getattr(args, "format", "json") == "text":
        _print_text(report)
    else:
        print(canonical_json(report))
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _print_text(report, indent=0):
    pad = "  " * indent
    if isinstance(report, dict) and "checks" in report:
        for check in report["checks"]:
            status = "pass" if check.get("pass") else "FAIL"
            name = check.get("check", "?")
            sector = check.get("sector")
            if sector:
                name = f"{name}[{sector}]"
            print(f"{pad}{name:42s} {check.get('max_residual', 0.0):.3e}  {status}")
        env = report.get("environment", {})
        print(f"{pad}seed={env.get('seed')} tol={env.get('tol')} "
              f"samples={env.get('samples')}")
        print(f"{pad}overall: {'pass' if report.get('pass') else 'FAIL'}")
    else:
        print(canonical_json(report))


# -- subcommand: gen -------------------------------------------------------


def cmd_gen(args):
    params = _family_params(args)
    kspec = build_k(params)
    lam = parse_complex(args.lam)
    matrix = kspec.eval(lam)
    payload = matrix.to_json_dict()
    payload["family"] = params.to_json_dict()
    payload["lambda"] = [lam.real, lam.imag]
    text = canonical_json(payload)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


# -- subcommand: verify ----------------------------------------------------


def cmd_verify(args):
    params = _family_params(args)
    kspec = build_k(params)
    rspec = _rspec_for(params, args.eta)
    shift = lambda l, m: (-l - 1j * rspec.profile.delta * rspec.eta_eff,
                          -l - m - 2j * rspec.profile.delta * rspec.eta_eff,
                          -m - 1j * rspec.profile.delta * rspec.eta_eff)
    sampler = SpectralSampler(rspec, args.seed)
    points = [sampler.draw_pair(extra_args=shift) for _ in range(args.samples)]

    checks = []

    grading = max(kspec.grading_violation(lam) for lam, _ in points)
    checks.append({"check": "entry_grading", "samples": args.samples,
                   "max_residual": grading, "pass": grading <= args.tol})

    resids = _map_samples(
        lambda p: reflection_residual_norm(rspec, kspec, p[0], p[1]), points)
    worst = max(resids)
    checks.append({"check": "reflection_residual", "samples": args.samples,
                   "max_residual": worst, "pass": worst <= args.tol})

    kp = k_plus(kspec, rspec)
    resids = _map_samples(
        lambda p: second_reflection_residual_norm(rspec, kp, p[0], p[1]),
        points)
    worst = max(resids)
    checks.append({"check": "k_plus_second_reflection",
                   "samples": args.samples,
                   "max_residual": worst, "pass": worst <= args.tol})

    if args.sectors:
        lam, mu = points[0]
        sweep = full_sector_sweep(kspec, rspec, lam, mu)
        for tag, value in sorted(sweep["sectors"].items()):
            checks.append({"check": "sector_residual", "sector": tag,
                           "samples": 1, "max_residual": value,
                           "pass": value <= args.tol})
        checks.append({"check": "sector_reassembly", "samples": 1,
                       "max_residual": sweep["reassembly_error"],
                       "pass": sweep["reassembly_ok"]})

    report = _report("verify", args, params, checks)
    return _emit(args, report, not report["pass"])


def _report(command, args, params, checks):
    ok = all(c["pass"] for c in checks)
    return {
        "command": command,
        "environment": {
            "seed": args.seed,
            "tol": args.tol,
            "samples": getattr(args, "samples", None),
            "eta": [complex(args.eta).real, complex(args.eta).imag],
            "grk_threads": _n_workers(),
            "params": params.to_json_dict() if params is not None else None,
        },
        "checks": checks,
        "pass": ok,
    }


# -- subcommand: check-r ---------------------------------------------------


def cmd_check_r(args):
    kind = TRIG if args.kind in ("trig", "trigonometric") else RATIONAL
    spec = RMatrixSpec(kind, GradingProfile(args.m, args.n),
                       eta=parse_complex(args.eta) if kind == TRIG else 0.0)
    sampler = SpectralSampler(spec, args.seed)
    points = [sampler.draw_pair() for _ in range(args.samples)]
    ybe = max(_map_samples(lambda p: ybe_residual(spec, p[0], p[1]), points))
    suite = property_suite(spec, samples=args.samples, seed=args.seed)

    checks = [{"check": "yang_baxter", "samples": args.samples,
               "max_residual": ybe, "pass": ybe <= args.tol}]
    for name, value in sorted(suite.items()):
        tol = args.tol if name != "crossing_symmetry" else min(args.tol, 1e-12)
        checks.append({"check": name, "samples": args.samples,
                       "max_residual": value, "pass": value <= tol})
    report = _report("check-r", args, None, checks)
    report["environment"]["kind"] = kind
    report["environment"]["m"] = args.m
    report["environment"]["n"] = args.n
    return _emit(args, report, not report["pass"])


# -- subcommand: sectors ---------------------------------------------------


def cmd_sectors(args):
    params = _family_params(args)
    kspec = build_k(params)
    rspec = _rspec_for(params, args.eta)
    sampler = SpectralSampler(rspec, args.seed)
    checks = []
    worst_tag = {}
    reassembly = 0.0
    for _ in range(args.samples):
        lam, mu = sampler.draw_pair()
        sweep = full_sector_sweep(kspec, rspec, lam, mu)
        reassembly = max(reassembly, sweep["reassembly_error"])
        for tag, value in sweep["sectors"].items():
            worst_tag[tag] = max(worst_tag.get(tag, 0.0), value)
    for tag, value in sorted(worst_tag.items()):
        checks.append({"check": "sector_residual", "sector": tag,
                       "samples": args.samples, "max_residual": value,
                       "pass": value <= args.tol})
    checks.append({"check": "sector_reassembly", "samples": args.samples,
                   "max_residual": reassembly, "pass": reassembly <= 1e-12})
    report = _report("sectors", args, params, checks)
    return _emit(args, report, not report["pass"])


# -- subcommand: catalog ---------------------------------------------------


def cmd_catalog(args):
    if args.list:
        report = {"command": "catalog",
                  "items": [{"id": item.id, "family": item.family,
                             "m": item.m, "n": item.n, "note": item.note}
                            for item in catalog_mod.appendix_catalog()]}
        print(canonical_json(report))
        return EXIT_OK
    if not args.id:
        print("catalog: need --list or --id", file=sys.stderr)
        return EXIT_USAGE
    item = catalog_mod.catalog_item(args.id)
    c = parse_c_list(args.c) or tuple([1.0 + 0j] * item.n_c)
    kspec = item.build(c)
    lam = parse_complex(args.lam)
    payload = kspec.eval(lam).to_json_dict()
    payload["family"] = item.params(c).to_json_dict()
    payload["lambda"] = [lam.real, lam.imag]
    print(canonical_json(payload))
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def _add_family_flags(sub):
    sub.add_argument("--family", required=True, choices=FAMILIES)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--q", type=int)
    sub.add_argument("--q1", type=int)
    sub.add_argument("--q2", type=int)
    sub.add_argument("--variant", choices=("I", "II", "III"))
    sub.add_argument("--block", choices=("bos", "ferm"))
    sub.add_argument("--L", type=int)
    sub.add_argument("--l", type=int, help="bosonic antidiagonal offset")
    sub.add_argument("--xi", type=int, help="fermionic antidiagonal offset")
    sub.add_argument("--nd-class", dest="nd_class", type=int, choices=(1, 2))
    sub.add_argument("--c", help="family c parameters, e.g. 'c0=1.3' or "
                                 "'1.3;0.5+0.2j'")
    sub.add_argument("--grassmann", default="auto",
                     help="'auto' or a JSON parameter file with cg/ch")
    sub.add_argument("--xi14-mode", dest="xi14_mode", choices=("c1c4", "c2c4"))
    sub.add_argument("--ii-slot-mode", dest="ii_slot_mode",
                     choices=("conj", "literal"))
    sub.add_argument("--c4-mode", dest="c4_mode", choices=("c0", "c1"))
    sub.add_argument("--mirror-mode", dest="mirror_mode",
                     choices=("c2c4", "c1c3"))


def _add_check_flags(sub):
    sub.add_argument("--samples", type=int, default=5)
    sub.add_argument("--seed", type=int, default=42)
    sub.add_argument("--tol", type=float, default=1e-9)
    sub.add_argument("--eta", default="0.37",
                     help="deformation parameter RE or RE,IM")
    sub.add_argument("--format", choices=("json", "text"), default="json")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="grk",
        description="graded R-matrix / reflection-matrix verification")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("gen", help="emit one reflection matrix as JSON")
    _add_family_flags(p)
    p.add_argument("--lambda", dest="lam", required=True,
                   help="spectral point RE,IM")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = subs.add_parser("verify", help="verify a solution family")
    _add_family_flags(p)
    _add_check_flags(p)
    p.add_argument("--sectors", action="store_true",
                   help="include the per-sector sweep")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("check-r", help="R-matrix checks")
    p.add_argument("--kind", required=True,
                   choices=("rational", "trig", "trigonometric"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_check_flags(p)
    p.set_defaults(func=cmd_check_r)

    p = subs.add_parser("sectors", help="per-sector condition sweep")
    _add_family_flags(p)
    _add_check_flags(p)
    p.set_defaults(func=cmd_sectors)

    p = subs.add_parser("catalog", help="golden catalog access")
    p.add_argument("--list", action="store_true")
    p.add_argument("--id")
    p.add_argument("--lambda", dest="lam", default="0.1,0.0")
    p.add_argument("--c")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        eta = getattr(args, "eta", None)
        if eta is not None:
            args.eta = parse_complex(eta)
        return args.func(args)
    except (SingularParameterError, SingularWeightError) as exc:
        print(canonical_json({"error": str(exc), "kind": "singular"}),
              file=sys.stderr)
        return EXIT_SINGULAR
    except (ParameterRangeError, ValueError, KeyError, OSError) as exc:
        print(canonical_json({"error": str(exc), "kind": "usage"}),
              file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
