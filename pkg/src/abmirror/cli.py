"""Command-line interface.

Subcommands
-----------
analyze      full report on one lattice (invariants, mirror admission,
             self-mirror verdict, concrete mirror representative)
mirror-pair  decide whether two lattices are mirror partners
self-mirror  rank-2 self-mirror test, with witness and the
             principally-polarized shortcut when a norm-2 vector exists
dual         volume / inverse-class / duality computations for one
             complexified Kahler class
period       admissibility analysis of one 2x4 period matrix
oracle       compare the constructive anti-automorphism route against the
             independent brute-force search on one lattice
sweep        run a named family of dual-route consistency checks

Exit codes: 0 success, 1 dual-route disagreement (oracle/sweep),
2 invalid input, 3 honest refusal (bounded search exhausted, enumeration
cap exceeded, or an unclassifiable discriminant form).

Input is a JSON file ("-" for stdin).  Exact quantities serialize as
decimal or "a/b" strings; Gaussian rationals as [re, im] string pairs;
floating-point periods as plain floats.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from .discforms import (
    AntiAutomorphism,
    FiniteQuadraticForm,
    brute_force_anti_automorphism,
    construct_anti_automorphism,
    discriminant_form,
    has_anti_automorphism,
    is_anti_automorphism,
)
from .errors import NoAntiAutomorphism, RefusalError, ValidationError
from .gaussian import GaussianRational
from .lattices import (
    GramLattice,
    determinant,
    direct_sum,
    hyperbolic_plane,
    make_lattice,
    rank_one,
    rescale,
)
from .mirrors import (
    analyze,
    are_mirror_partners,
    is_self_mirror,
    is_self_mirror_principally_polarized,
    mirror_ns_representative,
)
from .mukai import (
    apply_isometry,
    dual_isometry,
    inverse_kahler_class,
    make_kahler_class,
    mukai_exponential,
    to_coordinates,
    volume,
)
from .periods import analyze_period

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_INVALID = 2
EXIT_REFUSAL = 3

SWEEP_FAMILIES = (
    "principally-polarized",
    "u-rescaled",
    "rank-one-mirror",
    "random-kahler",
    "random-period",
)


@dataclass
class AnalysisRequest:
    """One CLI invocation, decoupled from argparse for programmatic use."""

    command: str
    payload: Any = None
    bound: int = 8
    cap: int = 512
    numeric: str = "exact"
    seed: int = 0
    family: Optional[str] = None
    count: int = 50


# ---------------------------------------------------------------------------
# serialization helpers


def _ser_gram(gram: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(row) for row in gram]


def _ser_fraction(value: Fraction) -> str:
    return str(value)


def _ser_gaussian(value: GaussianRational) -> list[str]:
    return [str(value.re), str(value.im)]


def _ser_coords(coords: Sequence[GaussianRational]) -> list[list[str]]:
    return [_ser_gaussian(c) for c in coords]


def _ser_form(form: FiniteQuadraticForm) -> dict:
    return {
        "orders": list(form.orders),
        "q_gram": [[_ser_fraction(x) for x in row] for row in form.q_gram],
    }


def _ser_witness(witness: Optional[AntiAutomorphism]) -> Optional[list[list[int]]]:
    if witness is None:
        return None
    return [list(row) for row in witness.matrix]


# ---------------------------------------------------------------------------
# parsing helpers


def _parse_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{what} must be an integer, got {value!r}")
    return value


def _parse_gram(obj: Any) -> GramLattice:
    if isinstance(obj, dict):
        obj = obj.get("gram")
    if not isinstance(obj, list) or not obj:
        raise ValidationError("expected a Gram matrix (non-empty array of rows)")
    rows = []
    for row in obj:
        if not isinstance(row, list):
            raise ValidationError("Gram matrix rows must be arrays")
        rows.append([_parse_int(x, "Gram entry") for x in row])
    return make_lattice(rows)


def _parse_rational(value: Any, what: str) -> Fraction:
    if isinstance(value, bool):
        raise ValidationError(f"{what} must be rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"{what}: bad rational {value!r}") from exc
    raise ValidationError(
        f"{what} must be an integer or an 'a/b' string, got {value!r}"
    )


def _parse_rational_vector(obj: Any, what: str) -> list[Fraction]:
    if not isinstance(obj, list):
        raise ValidationError(f"{what} must be an array")
    return [_parse_rational(v, what) for v in obj]


def _parse_period_entry_exact(entry: Any) -> GaussianRational:
    if isinstance(entry, list):
        if len(entry) != 2:
            raise ValidationError("period entries are [re, im] pairs")
        return GaussianRational(
            _parse_rational(entry[0], "period entry"),
            _parse_rational(entry[1], "period entry"),
        )
    return GaussianRational(_parse_rational(entry, "period entry"), Fraction(0))


def _parse_period_entry_float(entry: Any) -> complex:
    if isinstance(entry, list):
        if len(entry) != 2:
            raise ValidationError("period entries are [re, im] pairs")
        return complex(float(entry[0]), float(entry[1]))
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, str):
        return complex(float(Fraction(entry)))
    raise ValidationError(f"bad float period entry: {entry!r}")


def _parse_period_matrix(obj: Any, numeric: str) -> list[list]:
    if isinstance(obj, dict):
        obj = obj.get("matrix")
    if not isinstance(obj, list) or len(obj) != 2:
        raise ValidationError("expected a 2 x 4 period matrix")
    parse = (
        _parse_period_entry_exact if numeric == "exact" else _parse_period_entry_float
    )
    rows = []
    for row in obj:
        if not isinstance(row, list) or len(row) != 4:
            raise ValidationError("period matrix rows must have 4 entries")
        rows.append([parse(e) for e in row])
    return rows


# ---------------------------------------------------------------------------
# subcommand handlers


def _run_analyze(request: AnalysisRequest) -> tuple[dict, int]:
    lattice = _parse_gram(request.payload)
    report = analyze(lattice, request.bound, request.cap)
    doc = {
        "command": "analyze",
        "gram": _ser_gram(report.input_gram),
        "signature": list(report.signature),
        "determinant": str(report.determinant),
        "disc_orders": list(report.disc_orders),
        "simple": report.simple,
        "condition_diamond": report.condition_diamond,
        "admits_mirror": report.admits_mirror,
        "self_mirror": report.self_mirror,
        "mirror_representative_gram": (
            None
            if report.mirror_representative_gram is None
            else _ser_gram(report.mirror_representative_gram)
        ),
        "notes": list(report.notes),
    }
    return doc, EXIT_OK


def _parse_pair(payload: Any) -> tuple[GramLattice, GramLattice]:
    if isinstance(payload, dict):
        if "first" not in payload or "second" not in payload:
            raise ValidationError('expected keys "first" and "second"')
        return _parse_gram(payload["first"]), _parse_gram(payload["second"])
    if isinstance(payload, list) and len(payload) == 2:
        return _parse_gram(payload[0]), _parse_gram(payload[1])
    raise ValidationError("expected two Gram matrices")


def _run_mirror_pair(request: AnalysisRequest) -> tuple[dict, int]:
    first, second = _parse_pair(request.payload)
    verdict = are_mirror_partners(first, second, request.cap)
    doc = {
        "command": "mirror-pair",
        "first": _ser_gram(first.gram),
        "second": _ser_gram(second.gram),
        "ranks": [first.rank, second.rank],
        "mirror_partners": verdict,
    }
    return doc, EXIT_OK


def _run_self_mirror(request: AnalysisRequest) -> tuple[dict, int]:
    lattice = _parse_gram(request.payload)
    verdict = is_self_mirror(lattice)
    disc = discriminant_form(lattice)
    witness = None
    if verdict:
        witness = construct_anti_automorphism(disc)
    doc = {
        "command": "self-mirror",
        "gram": _ser_gram(lattice.gram),
        "determinant": str(determinant(lattice)),
        "disc_orders": list(disc.orders),
        "self_mirror": verdict,
        "witness": _ser_witness(witness),
        "principally_polarized_route": is_self_mirror_principally_polarized(
            lattice, request.bound
        ),
    }
    return doc, EXIT_OK


def _run_dual(request: AnalysisRequest) -> tuple[dict, int]:
    payload = request.payload
    if not isinstance(payload, dict):
        raise ValidationError('expected {"gram", "b_field", "kahler"}')
    lattice = _parse_gram(payload)
    b_field = _parse_rational_vector(payload.get("b_field"), "b_field")
    kahler = _parse_rational_vector(payload.get("kahler"), "kahler")
    reference = payload.get("reference")
    if reference is not None:
        reference = [_parse_int(x, "reference entry") for x in reference]
    omega = make_kahler_class(lattice, b_field, kahler, reference)
    vol = volume(omega)
    inverse = inverse_kahler_class(omega)
    matrix = dual_isometry(lattice)
    exp_coords = to_coordinates(mukai_exponential(omega))
    dual_exp = apply_isometry(matrix, exp_coords)
    scaled = to_coordinates(mukai_exponential(inverse).scaled(vol))
    doc = {
        "command": "dual",
        "gram": _ser_gram(lattice.gram),
        "reference": list(omega.reference),
        "volume": _ser_gaussian(vol),
        "inverse_b_field": [_ser_fraction(x) for x in inverse.b_field],
        "inverse_kahler": [_ser_fraction(x) for x in inverse.kahler],
        "dual_matrix": _ser_gram(matrix),
        "exp": _ser_coords(exp_coords),
        "dual_exp": _ser_coords(dual_exp),
        "volume_times_exp_inverse": _ser_coords(scaled),
        "compatible": dual_exp == scaled,
    }
    return doc, EXIT_OK


def _run_period(request: AnalysisRequest) -> tuple[dict, int]:
    rows = _parse_period_matrix(request.payload, request.numeric)
    report = analyze_period(rows, request.numeric)
    if report.mode == "exact":
        vector = _ser_coords(report.vector)
        residual = _ser_gaussian(report.isotropy_residual)
        pairing_value = _ser_gaussian(report.conjugate_pairing)
    else:
        vector = [[c.real, c.imag] for c in report.vector]
        residual = [
            report.isotropy_residual.real,
            report.isotropy_residual.imag,
        ]
        pairing_value = [
            report.conjugate_pairing.real,
            report.conjugate_pairing.imag,
        ]
    doc = {
        "command": "period",
        "mode": report.mode,
        "vector": vector,
        "isotropy_residual": residual,
        "conjugate_pairing": pairing_value,
        "admissible": report.admissible,
    }
    return doc, EXIT_OK


def _run_oracle(request: AnalysisRequest) -> tuple[dict, int]:
    lattice = _parse_gram(request.payload)
    form = discriminant_form(lattice)
    table_verdict = has_anti_automorphism(form)
    constructed = None
    if table_verdict:
        constructed = construct_anti_automorphism(form)
    brute = brute_force_anti_automorphism(form, request.cap)
    agree = table_verdict == (brute is not None)
    if constructed is not None:
        agree = agree and is_anti_automorphism(form, constructed.matrix)
    doc = {
        "command": "oracle",
        "gram": _ser_gram(lattice.gram),
        "disc": _ser_form(form),
        "table_verdict": table_verdict,
        "constructed": _ser_witness(constructed),
        "brute_force": _ser_witness(brute),
        "agree": agree,
    }
    return doc, EXIT_OK if agree else EXIT_DISAGREEMENT


# ---------------------------------------------------------------------------
# sweep families


def _sweep_principally_polarized(request: AnalysisRequest) -> tuple[int, list]:
    cases = 0
    failures = []
    for n in range(1, request.count + 1):
        for gram in ([[2, 1], [1, -2 * n]], [[2, 0], [0, -2 * n]]):
            cases += 1
            lattice = make_lattice(gram)
            shortcut = is_self_mirror_principally_polarized(lattice, request.bound)
            full = is_self_mirror(lattice)
            if shortcut is None:
                failures.append({"gram": gram, "reason": "no norm-2 vector found"})
            elif shortcut != full:
                failures.append(
                    {
                        "gram": gram,
                        "reason": "determinant route disagrees with "
                        "anti-automorphism route",
                        "shortcut": shortcut,
                        "full": full,
                    }
                )
    return cases, failures


def _sweep_u_rescaled(request: AnalysisRequest) -> tuple[int, list]:
    cases = 0
    failures = []
    for n in range(1, request.count + 1):
        cases += 1
        lattice = rescale(hyperbolic_plane(), n)
        if not is_self_mirror(lattice):
            failures.append({"n": n, "reason": "U(n) must be self-mirror"})
            continue
        form = discriminant_form(lattice)
        witness = construct_anti_automorphism(form)
        if not is_anti_automorphism(form, witness.matrix):
            failures.append({"n": n, "reason": "constructed witness invalid"})
    return cases, failures


def _sweep_rank_one_mirror(request: AnalysisRequest) -> tuple[int, list]:
    cases = 0
    failures = []
    for n in range(1, request.count + 1):
        cases += 1
        first = rank_one(2 * n)
        second = direct_sum(hyperbolic_plane(), rank_one(-2 * n))
        if not are_mirror_partners(first, second, request.cap):
            failures.append({"n": n, "reason": "<2n> and U+<-2n> must be partners"})
            continue
        rep = mirror_ns_representative(first, request.bound, request.cap)
        if rep.gram != second.gram:
            failures.append({"n": n, "reason": "representative mismatch"})
    return cases, failures


def _random_hyperbolic_rank2(rng: random.Random) -> GramLattice:
    while True:
        a = 2 * rng.randint(-3, 3)
        b = rng.randint(-6, 6)
        c = 2 * rng.randint(-3, 3)
        det = a * c - b * b
        if det < 0:
            return make_lattice([[a, b], [b, c]])


def _random_kahler_class(rng: random.Random, lattice: GramLattice):
    n = lattice.rank
    b_field = [
        Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)
    ]
    from .mukai import _rational_norm, _rational_pairing_int, default_positive_vector

    ref = default_positive_vector(lattice)
    while True:
        kahler = [
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)
        ]
        if _rational_norm(lattice, kahler) <= 0:
            continue
        against = _rational_pairing_int(lattice, kahler, ref)
        if against == 0:
            continue
        if against < 0:
            kahler = [-k for k in kahler]
        return make_kahler_class(lattice, b_field, kahler, ref)


def _sweep_random_kahler(request: AnalysisRequest) -> tuple[int, list]:
    rng = random.Random(request.seed)
    pool = [_random_hyperbolic_rank2(rng) for _ in range(10)]
    cases = 0
    failures = []
    one = GaussianRational.of(1)
    for index in range(request.count):
        cases += 1
        lattice = pool[index % len(pool)]
        omega = _random_kahler_class(rng, lattice)
        vol = volume(omega)
        inverse = inverse_kahler_class(omega)
        detail = {"case": index, "gram": _ser_gram(lattice.gram)}
        if volume(inverse) * vol != one:
            failures.append({**detail, "reason": "volume product is not 1"})
            continue
        back = inverse_kahler_class(inverse)
        if back.b_field != omega.b_field or back.kahler != omega.kahler:
            failures.append({**detail, "reason": "inverse is not an involution"})
            continue
        matrix = dual_isometry(lattice)
        exp_coords = to_coordinates(mukai_exponential(omega))
        dual_exp = apply_isometry(matrix, exp_coords)
        scaled = to_coordinates(mukai_exponential(inverse).scaled(vol))
        if dual_exp != scaled:
            failures.append({**detail, "reason": "duality-exponential mismatch"})
    return cases, failures


def _sweep_random_period(request: AnalysisRequest) -> tuple[int, list]:
    rng = random.Random(request.seed)
    cases = 0
    failures = []
    zero = GaussianRational.of(0)
    for index in range(request.count):
        cases += 1
        rows = [
            [
                GaussianRational(
                    Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                    Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                )
                for _ in range(4)
            ]
            for _ in range(2)
        ]
        try:
            report = analyze_period(rows, "exact")
        except ValidationError:
            continue  # dependent rows: no period vector to test
        if report.isotropy_residual != zero:
            failures.append({"case": index, "reason": "Pluecker relation failed"})
        elif not report.conjugate_pairing.is_real():
            failures.append({"case": index, "reason": "conjugate pairing not real"})
    return cases, failures


_SWEEPS = {
    "principally-polarized": _sweep_principally_polarized,
    "u-rescaled": _sweep_u_rescaled,
    "rank-one-mirror": _sweep_rank_one_mirror,
    "random-kahler": _sweep_random_kahler,
    "random-period": _sweep_random_period,
}


def _run_sweep(request: AnalysisRequest) -> tuple[dict, int]:
    if request.family not in _SWEEPS:
        raise ValidationError(
            f"unknown family {request.family!r}; choose from {SWEEP_FAMILIES}"
        )
    cases, failures = _SWEEPS[request.family](request)
    doc = {
        "command": "sweep",
        "family": request.family,
        "seed": request.seed,
        "cases": cases,
        "failure_count": len(failures),
        "failures": failures[:10],
        "agree": not failures,
    }
    return doc, EXIT_OK if not failures else EXIT_DISAGREEMENT


_HANDLERS = {
    "analyze": _run_analyze,
    "mirror-pair": _run_mirror_pair,
    "self-mirror": _run_self_mirror,
    "dual": _run_dual,
    "period": _run_period,
    "oracle": _run_oracle,
    "sweep": _run_sweep,
}


def run(request: AnalysisRequest) -> tuple[dict, int]:
    """Execute one request; returns (document, exit_code).  Raises nothing:
    validation and refusal conditions come back as error documents."""
    handler = _HANDLERS.get(request.command)
    if handler is None:
        return (
            {
                "command": request.command,
                "error": {
                    "type": "ValidationError",
                    "message": f"unknown command {request.command!r}",
                },
            },
            EXIT_INVALID,
        )
    try:
        return handler(request)
    except ValidationError as exc:
        return (
            {
                "command": request.command,
                "error": {"type": type(exc).__name__, "message": str(exc)},
            },
            EXIT_INVALID,
        )
    except (RefusalError, NoAntiAutomorphism) as exc:
        return (
            {
                "command": request.command,
                "error": {"type": type(exc).__name__, "message": str(exc)},
            },
            EXIT_REFUSAL,
        )


# ---------------------------------------------------------------------------
# text rendering and entry point


def _render_text(doc: dict) -> str:
    lines = []
    for key, value in doc.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _read_payload(path: str) -> Any:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ValidationError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"input is not valid JSON: {exc}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abmirror",
        description="mirror-symmetry criteria for even hyperbolic lattices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_input: bool) -> None:
        if with_input:
            p.add_argument(
                "input",
                help='JSON input file, or "-" for stdin',
            )
        p.add_argument("--bound", type=int, default=8, help="coordinate search bound")
        p.add_argument("--cap", type=int, default=512, help="enumeration cap")
        p.add_argument(
            "--numeric",
            choices=("exact", "float"),
            default="exact",
            help="arithmetic backend for period analysis",
        )
        p.add_argument("--seed", type=int, default=0, help="random seed for sweeps")
        p.add_argument(
            "--format",
            choices=("doc", "text"),
            default="doc",
            help="output as a JSON document or as plain lines",
        )

    for name, text in (
        ("analyze", "full mirror-symmetry report for one lattice"),
        ("mirror-pair", "are two lattices mirror partners?"),
        ("self-mirror", "rank-2 self-mirror test with witness"),
        ("dual", "volume / inverse class / duality of a Kahler class"),
        ("period", "admissibility of a 2x4 period matrix"),
        ("oracle", "constructive route vs brute-force oracle on one lattice"),
    ):
        p = sub.add_parser(name, help=text)
        add_common(p, with_input=True)

    p = sub.add_parser(name="sweep", help="run a family of dual-route checks")
    p.add_argument(
        "--family",
        required=True,
        choices=SWEEP_FAMILIES,
        help="which consistency family to run",
    )
    p.add_argument("--count", type=int, default=50, help="cases per family")
    add_common(p, with_input=False)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        payload = _read_payload(args.input) if hasattr(args, "input") else None
    except ValidationError as exc:
        doc = {
            "command": args.command,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        print(json.dumps(doc, indent=2) if args.format == "doc" else _render_text(doc))
        return EXIT_INVALID
    request = AnalysisRequest(
        command=args.command,
        payload=payload,
        bound=args.bound,
        cap=args.cap,
        numeric=args.numeric,
        seed=args.seed,
        family=getattr(args, "family", None),
        count=getattr(args, "count", 50),
    )
    doc, code = run(request)
    if args.format == "doc":
        print(json.dumps(doc, indent=2))
    else:
        print(_render_text(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
