"""Command-line scenario runner.

Verbs::

    fockoptics run --case Case6 --theta 0.39269908169872414 --cutoff 6
    fockoptics run --case Case4 --sweep 0:1.5707963267948966:101 --format csv
    fockoptics verify [--cutoff 12] [--seed N]
    fockoptics list-cases

A scenario may also come from an INI file (``--config``) with a
``[scenario]`` section holding the same keys as the flags (``alpha_re``,
``theta2``, ...) and an optional ``[sweep]`` section with ``start``, ``stop``
and ``steps``. Flags override the file. Angles are radians. Complex numbers
are written as separate real and imaginary fields.

Exit status: 0 success, 1 configuration error, 2 verification failure,
3 numerical (cutoff) error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field, fields, replace
from typing import Any

import numpy as np

from .errors import ConfigInvalid, CutoffExceeded, CutoffTooSmall
from .fock import CatSpec, TwoModeState, cat_state, coherent_state, fock_state, required_cutoff
from .interferometer import (
    Circuit,
    Mirror,
    PhaseShift,
    Splitter,
    detection_distribution,
    mach_zehnder,
    run_circuit,
)
from .metrics import fidelity, photon_stats, schmidt_decompose
from .oracle import (
    CaseId,
    oracle_case1,
    oracle_case2,
    oracle_case4,
    oracle_case5,
    oracle_case6,
    oracle_case7,
    oracle_case8,
)
from .splitter import SplitterParams
from .verification import DEFAULT_SEED, run_verification_suite

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY, EXIT_NUMERIC = 0, 1, 2, 3
FORMATS = ("table", "csv", "jsonl")
AMPLITUDE_FLOOR = 1e-12

CASE_INPUTS = {
    CaseId.CASE1: "|1>_a |0>_b, one splitter",
    CaseId.CASE2: "|alpha>_a |0>_b, one splitter",
    CaseId.CASE4: "|1>_a |0>_b, Mach-Zehnder",
    CaseId.CASE5: "|2>_a |0>_b, Mach-Zehnder",
    CaseId.CASE6: "|1>_a |1>_b, Mach-Zehnder",
    CaseId.CASE7: "|alpha>_a |0>_b, Mach-Zehnder",
    CaseId.CASE8: "eta(|alpha> + sign |beta>)_a |0>_b, Mach-Zehnder",
}


@dataclass(frozen=True)
class Sweep:
    start: float
    stop: float
    steps: int

    def thetas(self) -> list[float]:
        return [float(t) for t in np.linspace(self.start, self.stop, self.steps)]


@dataclass(frozen=True)
class ScenarioConfig:
    case: CaseId | str = CaseId.CASE1
    theta: float | None = None
    theta2: float | None = None
    alpha_re: float = 0.0
    alpha_im: float = 0.0
    beta_re: float = 0.0
    beta_im: float = 0.0
    sign: int = 1
    phi: float | None = None
    cutoff: int | None = None
    sweep: Sweep | None = None
    format: str = "table"
    seed: int = DEFAULT_SEED
    circuit: str = ""
    input: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def alpha(self) -> complex:
        return complex(self.alpha_re, self.alpha_im)

    @property
    def beta(self) -> complex:
        return complex(self.beta_re, self.beta_im)

    @property
    def custom(self) -> bool:
        return self.case == "custom"


def _finite(name, value):
    if value is not None and not math.isfinite(value):
        raise ConfigInvalid(name, f"must be finite, got {value}")


def validate(config: ScenarioConfig) -> ScenarioConfig:
    """Check a configuration, normalizing ``case``; raises ConfigInvalid naming the field."""
    case = config.case
    if isinstance(case, str) and case.strip().lower() == "custom":
        case = "custom"
    elif not isinstance(case, CaseId):
        try:
            case = CaseId.parse(case)
        except ValueError:
            raise ConfigInvalid("case", f"unknown case {config.case!r}; see list-cases") from None
    config = replace(config, case=case)
    for name in ("theta", "theta2", "alpha_re", "alpha_im", "beta_re", "beta_im", "phi"):
        _finite(name, getattr(config, name))
    if config.sign not in (1, -1):
        raise ConfigInvalid("sign", f"must be +1 or -1, got {config.sign}")
    if config.cutoff is not None and config.cutoff < 1:
        raise ConfigInvalid("cutoff", f"must be >= 1, got {config.cutoff}")
    if config.format not in FORMATS:
        raise ConfigInvalid("format", f"must be one of {', '.join(FORMATS)}")
    if config.sweep is not None:
        sw = config.sweep
        _finite("sweep", sw.start)
        _finite("sweep", sw.stop)
        if sw.steps < 2:
            raise ConfigInvalid("sweep", f"steps must be >= 2, got {sw.steps}")
    elif config.theta is None and not config.custom:
        raise ConfigInvalid("theta", "required unless a sweep is given")
    if config.phi is not None and case in (CaseId.CASE1, CaseId.CASE2):
        raise ConfigInvalid("phi", "a phase shifter needs a two-splitter case")
    if config.custom:
        if not config.circuit:
            raise ConfigInvalid("circuit", "custom case needs a circuit description")
        if not config.input:
            raise ConfigInvalid("input", "custom case needs an input description")
        if config.sweep is not None:
            raise ConfigInvalid("sweep", "custom circuits carry their own angles")
        parse_circuit(config.circuit, 1)
    if case == CaseId.CASE8 and config.alpha == config.beta and config.sign == -1:
        raise ConfigInvalid("beta", "alpha == beta with sign -1 is the zero vector")
    return config


# --- custom circuits ------------------------------------------------------

_TOKEN = re.compile(r"(\w+)\s*(?:\(([^)]*)\))?")


def parse_circuit(text: str, cutoff: int) -> Circuit:
    """``"bs(0.3) phase(a, 3.14) mirror bs(0.3)"`` -> Circuit."""
    elements = []
    for match in _TOKEN.finditer(text.replace(";", " ")):
        name, args = match.group(1).lower(), match.group(2)
        parts = [p.strip() for p in args.split(",")] if args else []
        try:
            if name in ("bs", "splitter") and len(parts) == 1:
                elements.append(Splitter(SplitterParams(float(parts[0]))))
            elif name in ("phase", "ps") and len(parts) == 2:
                elements.append(PhaseShift(parts[0], float(parts[1])))
            elif name == "mirror" and not parts:
                elements.append(Mirror())
            else:
                raise ValueError(f"cannot parse element {match.group(0)!r}")
        except ValueError as exc:
            raise ConfigInvalid("circuit", str(exc)) from None
    if not elements and text.strip():
        raise ConfigInvalid("circuit", f"no elements found in {text!r}")
    return Circuit(tuple(elements), cutoff)


def _parse_input(config: ScenarioConfig, cutoff: int) -> TwoModeState:
    match = _TOKEN.fullmatch(config.input.strip())
    if not match:
        raise ConfigInvalid("input", f"cannot parse {config.input!r}")
    name, args = match.group(1).lower(), match.group(2) or ""
    parts = [p.strip() for p in args.split(",") if p.strip()]
    try:
        if name == "fock" and len(parts) == 2:
            return fock_state(int(parts[0]), int(parts[1]), cutoff)
        if name == "coherent" and len(parts) <= 1:
            return coherent_state(config.alpha, parts[0] if parts else "a", cutoff)
        if name == "cat" and len(parts) <= 1:
            return cat_state(CatSpec(config.alpha, config.beta, config.sign), parts[0] if parts else "a", cutoff)[0]
    except (CutoffTooSmall, CutoffExceeded):
        raise
    except ValueError as exc:
        raise ConfigInvalid("input", str(exc)) from None
    raise ConfigInvalid("input", f"cannot parse {config.input!r}")


# --- scenario execution ---------------------------------------------------

def default_cutoff(config: ScenarioConfig) -> int:
    case = config.case
    if case in (CaseId.CASE2, CaseId.CASE7):
        return required_cutoff(abs(config.alpha) ** 2)
    if case == CaseId.CASE8:
        return required_cutoff(max(abs(config.alpha), abs(config.beta)) ** 2)
    if config.custom:
        if "fock" in config.input.lower():
            return max(2, *(int(x) for x in re.findall(r"\d+", config.input)[:2]))
        return required_cutoff(max(abs(config.alpha), abs(config.beta)) ** 2)
    return 4


def _input_state(config: ScenarioConfig, cutoff: int) -> TwoModeState:
    case = config.case
    if config.custom:
        return _parse_input(config, cutoff)
    if case in (CaseId.CASE1, CaseId.CASE4):
        return fock_state(1, 0, cutoff)
    if case == CaseId.CASE5:
        return fock_state(2, 0, cutoff)
    if case == CaseId.CASE6:
        return fock_state(1, 1, cutoff)
    if case in (CaseId.CASE2, CaseId.CASE7):
        return coherent_state(config.alpha, "a", cutoff)
    return cat_state(CatSpec(config.alpha, config.beta, config.sign), "a", cutoff)[0]


def _circuit(config: ScenarioConfig, theta: float, cutoff: int) -> Circuit:
    if config.custom:
        return parse_circuit(config.circuit, cutoff)
    p1 = SplitterParams(theta)
    if not config.case.two_splitters:
        return Circuit((Splitter(p1),), cutoff)
    p2 = SplitterParams(theta if config.theta2 is None else config.theta2)
    return mach_zehnder(p1, p2, cutoff, phase=config.phi)


def _oracle(config: ScenarioConfig, theta: float, cutoff: int) -> TwoModeState | None:
    if config.custom or config.phi is not None:
        return None
    case = config.case
    p1 = SplitterParams(theta)
    p2 = SplitterParams(theta if config.theta2 is None else config.theta2)
    if case == CaseId.CASE1:
        return oracle_case1(p1, cutoff)
    if case == CaseId.CASE2:
        return oracle_case2(p1, config.alpha, cutoff)
    if case == CaseId.CASE4:
        return oracle_case4(p1, p2, cutoff)
    if case == CaseId.CASE5:
        return oracle_case5(p1, p2, cutoff)
    if case == CaseId.CASE6:
        return oracle_case6(p1, p2, cutoff)
    if case == CaseId.CASE7:
        return oracle_case7(p1, p2, config.alpha, cutoff)
    return oracle_case8(p1, p2, CatSpec(config.alpha, config.beta, config.sign), cutoff)


def _complex(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _evaluate(config: ScenarioConfig, theta: float, cutoff: int) -> dict[str, Any]:
    psi = _input_state(config, cutoff)
    out = run_circuit(psi, _circuit(config, theta, cutoff))
    ref = _oracle(config, theta, cutoff)
    stats = {m: photon_stats(out, m) for m in ("a", "b")}
    return {
        "theta": theta,
        "amplitudes": [{"n": n, "m": m, **_complex(c)} for (n, m), c in out.support(AMPLITUDE_FLOOR)],
        "distribution_a": [p for _, p in detection_distribution(out, "a")],
        "distribution_b": [p for _, p in detection_distribution(out, "b")],
        "stats": {
            m: {"mean": s.mean, "variance": s.variance, "mandel_q": s.mandel_q, "vacuum": s.vacuum}
            for m, s in stats.items()
        },
        "entropy_bits": schmidt_decompose(out).entropy_bits,
        "oracle_fidelity": None if ref is None else fidelity(out, ref),
    }


def run_scenario(config: ScenarioConfig) -> dict[str, Any]:
    """Run one scenario (or a theta sweep) and return a JSON-ready report."""
    config = validate(config)
    cutoff = config.cutoff if config.cutoff is not None else default_cutoff(config)
    case_name = "custom" if config.custom else config.case.value
    header = {
        "case": case_name,
        "input": config.input if config.custom else CASE_INPUTS[config.case],
        "cutoff": cutoff,
        "theta2": config.theta2,
        "alpha": _complex(config.alpha),
        "beta": _complex(config.beta),
        "sign": config.sign,
        "phi": config.phi,
        "circuit": config.circuit or None,
    }
    if config.sweep is None:
        return {**header, "result": _evaluate(config, config.theta, cutoff)}
    points = [_evaluate(config, t, cutoff) for t in config.sweep.thetas()]
    return {**header, "sweep": {"start": config.sweep.start, "stop": config.sweep.stop, "steps": config.sweep.steps}, "points": points}


# --- output ---------------------------------------------------------------

def fmt_float(x) -> str:
    """17 significant digits: parses back to the identical double."""
    if x is None:
        return ""
    return format(float(x), ".17g")


SWEEP_COLUMNS = ("index", "theta", "P_a1", "P_b1", "mean_a", "mean_b", "entropy_bits", "oracle_fidelity")


def sweep_rows(report: dict) -> list[dict]:
    rows = []
    for i, pt in enumerate(report["points"]):
        da, db = pt["distribution_a"], pt["distribution_b"]
        rows.append(
            {
                "index": i,
                "theta": pt["theta"],
                "P_a1": da[1],
                "P_b1": db[1],
                "mean_a": pt["stats"]["a"]["mean"],
                "mean_b": pt["stats"]["b"]["mean"],
                "entropy_bits": pt["entropy_bits"],
                "oracle_fidelity": pt["oracle_fidelity"],
            }
        )
    return rows


def render(report: dict, fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "jsonl":
        if "points" in report:
            head = {k: v for k, v in report.items() if k != "points"}
            buf.write(json.dumps(head, sort_keys=True) + "\n")
            for row in sweep_rows(report):
                buf.write(json.dumps(row, sort_keys=True) + "\n")
        else:
            buf.write(json.dumps(report, sort_keys=True) + "\n")
        return buf.getvalue()
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        if "points" in report:
            writer.writerow(SWEEP_COLUMNS)
            for row in sweep_rows(report):
                writer.writerow([row["index"], *(fmt_float(row[c]) for c in SWEEP_COLUMNS[1:])])
        else:
            writer.writerow(("n", "m", "re", "im", "probability"))
            for amp in report["result"]["amplitudes"]:
                prob = amp["re"] ** 2 + amp["im"] ** 2
                writer.writerow((amp["n"], amp["m"], fmt_float(amp["re"]), fmt_float(amp["im"]), fmt_float(prob)))
        return buf.getvalue()
    return _render_table(report)


def _render_table(report: dict) -> str:
    lines = [f"case     {report['case']}", f"input    {report['input']}", f"cutoff   {report['cutoff']}"]
    if "points" in report:
        lines.append("  ".join(f"{c:>22}" for c in SWEEP_COLUMNS))
        for row in sweep_rows(report):
            lines.append("  ".join(f"{fmt_float(row[c]) if c != 'index' else row[c]:>22}" for c in SWEEP_COLUMNS))
        return "\n".join(lines) + "\n"
    res = report["result"]
    lines.append(f"theta    {fmt_float(res['theta'])}")
    lines.append("output amplitudes:")
    for amp in res["amplitudes"]:
        lines.append(f"  |{amp['n']},{amp['m']}>  {fmt_float(amp['re']):>24} {fmt_float(amp['im']):>24}i")
    for m in ("a", "b"):
        dist = res[f"distribution_{m}"]
        shown = ", ".join(f"{k}: {p:.12g}" for k, p in enumerate(dist) if p > AMPLITUDE_FLOOR)
        st = res["stats"][m]
        lines.append(f"mode {m}   P(k) {{{shown}}}")
        lines.append(f"         mean {st['mean']:.12g}  variance {st['variance']:.12g}  Q {st['mandel_q']:.12g}")
    lines.append(f"entropy  {res['entropy_bits']:.12g} bits")
    if res["oracle_fidelity"] is not None:
        lines.append(f"oracle fidelity  {fmt_float(res['oracle_fidelity'])}")
    return "\n".join(lines) + "\n"


def render_verification(report, fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "jsonl":
        buf.write(json.dumps({"seed": report.seed, "cutoff": report.cutoff}) + "\n")
        for r in report.results:
            buf.write(
                json.dumps(
                    {"check": r.name, "deviation": r.deviation, "tolerance": r.tolerance,
                     "verdict": "pass" if r.passed else "FAIL", "detail": r.detail}
                )
                + "\n"
            )
        buf.write(json.dumps({"passed": report.passed, "checks": len(report.results)}) + "\n")
    elif fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("check", "deviation", "tolerance", "verdict"))
        for r in report.results:
            writer.writerow((r.name, fmt_float(r.deviation), fmt_float(r.tolerance), "pass" if r.passed else "FAIL"))
    else:
        buf.write(f"# seed {report.seed}  cutoff {report.cutoff}\n")
        for r in report.results:
            verdict = "pass" if r.passed else "FAIL"
            buf.write(f"{verdict:4}  {r.name:45} deviation {r.deviation:10.3e}  tolerance {r.tolerance:8.1e}\n")
        failed = sum(not r.passed for r in report.results)
        buf.write(f"# {len(report.results) - failed}/{len(report.results)} checks passed\n")
    return buf.getvalue()


# --- argument handling ----------------------------------------------------

def parse_sweep(text: str) -> Sweep:
    try:
        start, stop, steps = text.split(":")
        return Sweep(float(start), float(stop), int(steps))
    except ValueError:
        raise ConfigInvalid("sweep", f"expected start:stop:steps, got {text!r}") from None


_FLOAT_KEYS = {"theta", "theta2", "alpha_re", "alpha_im", "beta_re", "beta_im", "phi"}
_INT_KEYS = {"sign", "cutoff", "seed"}


def load_config(path: str) -> dict[str, Any]:
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigInvalid("config", str(exc)) from None
    values: dict[str, Any] = {}
    known = {f.name for f in fields(ScenarioConfig)} - {"sweep", "extra"}
    if parser.has_section("scenario"):
        for key, raw in parser.items("scenario"):
            if key not in known:
                raise ConfigInvalid(key, "unknown key in [scenario]")
            values[key] = _coerce(key, raw)
    if parser.has_section("sweep"):
        sec = parser["sweep"]
        try:
            values["sweep"] = Sweep(float(sec["start"]), float(sec["stop"]), int(sec["steps"]))
        except (KeyError, ValueError) as exc:
            raise ConfigInvalid("sweep", f"needs numeric start, stop, steps ({exc})") from None
    return values


def _coerce(key: str, raw: str):
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
    except ValueError:
        raise ConfigInvalid(key, f"not a number: {raw!r}") from None
    return raw.strip()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fockoptics", description="Two-mode Fock-space beam-splitter simulator")
    sub = parser.add_subparsers(dest="verb", required=True)

    run = sub.add_parser("run", help="run one scenario or a theta sweep")
    run.add_argument("--config")
    run.add_argument("--case")
    run.add_argument("--theta", type=float)
    run.add_argument("--theta2", type=float)
    run.add_argument("--alpha-re", type=float)
    run.add_argument("--alpha-im", type=float)
    run.add_argument("--beta-re", type=float)
    run.add_argument("--beta-im", type=float)
    run.add_argument("--sign", type=int)
    run.add_argument("--phi", type=float)
    run.add_argument("--cutoff", type=int)
    run.add_argument("--sweep")
    run.add_argument("--circuit")
    run.add_argument("--input")
    run.add_argument("--format", choices=FORMATS)
    run.add_argument("--out")
    run.add_argument("--seed", type=int)

    verify = sub.add_parser("verify", help="run every engine/oracle cross-check")
    verify.add_argument("--cutoff", type=int, default=12)
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--format", choices=FORMATS, default="table")
    verify.add_argument("--out")
    verify.add_argument("--flip-sign", action="store_true", help=argparse.SUPPRESS)

    lst = sub.add_parser("list-cases", help="list the built-in cases")
    lst.add_argument("--format", choices=FORMATS, default="table")
    return parser


def config_from_args(args: argparse.Namespace) -> ScenarioConfig:
    values = load_config(args.config) if args.config else {}
    for key in ("case", "theta", "theta2", "alpha_re", "alpha_im", "beta_re", "beta_im",
                "sign", "phi", "cutoff", "format", "seed", "circuit", "input"):
        val = getattr(args, key)
        if val is not None:
            values[key] = val
    if args.sweep is not None:
        values["sweep"] = parse_sweep(args.sweep)
    return ScenarioConfig(**values)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verb == "list-cases":
            rows = [(c.short, c.value, CASE_INPUTS[c]) for c in CaseId]
            if args.format == "jsonl":
                text = "".join(json.dumps({"case": s, "id": v, "input": d}) + "\n" for s, v, d in rows)
            elif args.format == "csv":
                text = "case,id,input\n" + "".join(f'{s},{v},"{d}"\n' for s, v, d in rows)
            else:
                text = "".join(f"{s:6} {v:28} {d}\n" for s, v, d in rows)
            _emit(text, None)
            return EXIT_OK
        if args.verb == "verify":
            if args.cutoff < 3:
                raise ConfigInvalid("cutoff", "verification needs cutoff >= 3")
            report = run_verification_suite(cutoff=args.cutoff, seed=args.seed, flip_sign=args.flip_sign)
            _emit(render_verification(report, args.format), args.out)
            return EXIT_OK if report.passed else EXIT_VERIFY
        config = validate(config_from_args(args))
        report = run_scenario(config)
        _emit(render(report, config.format), args.out)
        return EXIT_OK
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CutoffTooSmall, CutoffExceeded) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
