"""Command-line front end: ``aklt-vbs validate | spectrum | entropy``.

Exit codes: 0 ok, 2 invalid chain, 3 parse error, 4 closed-form/brute-force
mismatch, 5 unsupported case (single-site closed form, brute-force size cap).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .chain import ChainError, ChainSpec, OutOfRange, block, parse_chain
from .closed_form import closed_form_spectrum, saturated_entropy
from .density import (
    BlockSpectrum,
    ConsistencyError,
    reduced_density_matrix,
    renyi_entropy,
    spectrum_by_peeling,
    von_neumann_entropy,
)
from .fock import boundary_states
from .hamiltonian import build_block_hamiltonian, penalized_spins_twice
from .numerics import HalfInt

log = logging.getLogger("aklt_vbs")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PARSE = 3
EXIT_MISMATCH = 4
EXIT_UNSUPPORTED = 5

DEFAULT_MAX_DIM = 10 ** 6
METHODS = ("closed-form", "brute-force", "both")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    chain_path: Path
    block: tuple[int, int] | None = None
    sweep: tuple[int, int] | None = None
    block_start: int | None = None
    method: str = "closed-form"
    alphas: tuple[float, ...] = ()
    output: Path | None = None
    coefficients: dict = field(default_factory=dict)
    max_dim: int = DEFAULT_MAX_DIM
    jobs: int = 1


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _read_chain(path: Path) -> ChainSpec:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read chain spec {path}: {exc}") from exc
    try:
        return parse_chain(data)
    except ChainError as exc:
        raise CliError(EXIT_INVALID, f"invalid chain: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"malformed chain spec: {exc}") from exc


def _parse_pair(text: str, what: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"{what} must look like A:B, got {text!r}") from exc


def _parse_coeff(text: str) -> tuple[tuple[int, HalfInt], Fraction]:
    try:
        j, J, value = text.split(",")
        key = (int(j), HalfInt.of(J))
        c = Fraction(value)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"--coeff must be j,J,value, got {text!r}") from exc
    if c <= 0:
        raise CliError(EXIT_PARSE, f"coefficient {text!r} must be positive")
    return key, c


def _parse_alphas(text: str) -> tuple[float, ...]:
    try:
        alphas = tuple(float(a) for a in text.split(",") if a.strip())
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"bad --alpha list {text!r}") from exc
    for a in alphas:
        if a <= 0 or a == 1:
            raise CliError(EXIT_PARSE, f"Renyi order must be positive and != 1, got {a}")
    return alphas


def _check_coefficients(chain: ChainSpec, coefficients: dict) -> None:
    for (j, J), _ in coefficients.items():
        if not 0 <= j < len(chain.bonds):
            raise CliError(EXIT_PARSE, f"--coeff bond {j} is not a bond of the chain")
        allowed = penalized_spins_twice(chain.spins_twice[j], chain.spins_twice[j + 1],
                                        chain.bonds[j])
        if J.twice not in allowed:
            raise CliError(EXIT_PARSE, f"--coeff J={J} is not penalized on bond {j}")


def _write(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _brute_force_spectrum(chain: ChainSpec, blk, config: RunConfig) -> BlockSpectrum:
    size = chain.configuration_count()
    if size > config.max_dim:
        raise CliError(EXIT_UNSUPPORTED,
                       f"brute force refused: chain has {size} configurations "
                       f"(cap {config.max_dim}; raise with --max-dim)")
    rho = reduced_density_matrix(chain, blk)
    try:
        spec = spectrum_by_peeling(rho, blk)
    except ConsistencyError as exc:
        raise CliError(EXIT_MISMATCH, f"brute-force density matrix inconsistent: {exc}") from exc
    if config.coefficients and blk.length >= 2:
        ham = build_block_hamiltonian(chain, blk, config.coefficients)
        for pq, state in boundary_states(chain, blk).items():
            if ham.apply(state):
                raise CliError(EXIT_MISMATCH, f"block Hamiltonian does not annihilate state {pq}")
    return spec


def _closed_form(blk) -> BlockSpectrum:
    if blk.length < 2:
        raise CliError(EXIT_UNSUPPORTED,
                       "closed form needs L >= 2 (no interior bond for L = 1); "
                       "use --method brute-force")
    return closed_form_spectrum(blk)


def cmd_validate(config: RunConfig) -> int:
    chain = _read_chain(config.chain_path)
    name = chain.name or Path(config.chain_path).stem
    print(f"{name}: ok, N={chain.n_bulk}, "
          f"spins_twice={list(chain.spins_twice)}, bonds={list(chain.bonds)}")
    return EXIT_OK


def cmd_spectrum(config: RunConfig) -> int:
    chain = _read_chain(config.chain_path)
    _check_coefficients(chain, config.coefficients)
    k, L = config.block
    try:
        blk = block(chain, k, L)
    except OutOfRange as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc

    header = ["J_twice", "multiplicity", "lambda_num", "lambda_den", "lambda_float"]
    rows = []
    status = EXIT_OK
    if config.method == "closed-form":
        spec = _closed_form(blk)
        for tJ, lam in spec.items():
            rows.append([tJ, tJ + 1, lam.numerator, lam.denominator, _fmt(float(lam))])
    elif config.method == "brute-force":
        spec = _brute_force_spectrum(chain, blk, config)
        for tJ, lam in spec.items():
            rows.append([tJ, tJ + 1, lam.numerator, lam.denominator, _fmt(float(lam))])
    else:
        cf = _closed_form(blk)
        bf = _brute_force_spectrum(chain, blk, config)
        header += ["bf_num", "bf_den", "bf_float", "match"]
        for tJ in sorted(set(cf.eigenvalues) | set(bf.eigenvalues)):
            a = cf.eigenvalues.get(tJ, Fraction(0))
            b = bf.eigenvalues.get(tJ, Fraction(0))
            ok = a == b
            if not ok:
                status = EXIT_MISMATCH
                log.error("J=%s: closed form %s != brute force %s", HalfInt(tJ), a, b)
            rows.append([tJ, tJ + 1, a.numerator, a.denominator, _fmt(float(a)),
                         b.numerator, b.denominator, _fmt(float(b)),
                         "match" if ok else "mismatch"])
    _write(_csv_text(header, rows), config.output)
    return status


def _sweep_point(args) -> tuple[int, BlockSpectrum | None, tuple[int, str] | None]:
    """One sweep entry; failures come back as (exit code, message) so workers never raise."""
    chain, k, L, method, max_dim = args
    config = RunConfig(chain_path=Path(), method=method, max_dim=max_dim)
    blk = block(chain, k, L)
    try:
        if method == "brute-force":
            return L, _brute_force_spectrum(chain, blk, config), None
        cf = _closed_form(blk)
        if method == "both":
            bf = _brute_force_spectrum(chain, blk, config)
            if bf.eigenvalues != cf.eigenvalues:
                return L, None, (EXIT_MISMATCH, f"L={L}: closed form and brute force disagree")
        return L, cf, None
    except CliError as exc:
        return L, None, (exc.code, f"L={L}: {exc}")


def cmd_entropy_sweep(config: RunConfig) -> int:
    chain = _read_chain(config.chain_path)
    k = config.block_start
    lmin, lmax = config.sweep
    if lmin < 1 or lmax < lmin:
        raise CliError(EXIT_PARSE, f"bad sweep range {lmin}:{lmax}")
    try:
        blocks = [block(chain, k, L) for L in range(lmin, lmax + 1)]
    except OutOfRange as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc

    work = [(chain, k, b.length, config.method, config.max_dim) for b in blocks]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_sweep_point, work))
    else:
        results = [_sweep_point(w) for w in work]

    header = ["L", "S_vN"] + [f"S_renyi_{_fmt(a)}" for a in config.alphas] + \
             ["saturation", "gap"]
    rows = []
    for blk, (L, spec, err) in zip(blocks, results):
        if err is not None:
            raise CliError(*err)
        svn = von_neumann_entropy(spec)
        sat = saturated_entropy(blk.m_left, blk.m_right)
        rows.append([L, _fmt(svn)] + [_fmt(renyi_entropy(spec, a)) for a in config.alphas]
                    + [_fmt(sat), _fmt(sat - svn)])
    _write(_csv_text(header, rows), config.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aklt-vbs",
        description="Exact block density matrices of inhomogeneous AKLT valence-bond-solid states.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a chain spec file")
    p.add_argument("--chain", required=True, type=Path)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--chain", required=True, type=Path)
    common.add_argument("--method", choices=METHODS, default="closed-form")
    common.add_argument("--csv", dest="output", type=Path, default=None)
    common.add_argument("--coeff", action="append", default=[],
                        help="bond coefficient C_J(j,j+1) as j,J,value (repeatable)")
    common.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM,
                        help="largest full-chain configuration count for brute force")

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues Lambda(J) of one block")
    p.add_argument("--block", required=True, help="K:L, start site and length")

    p = sub.add_parser("entropy", parents=[common], help="entropies over a range of block sizes")
    p.add_argument("--block-start", required=True, type=int)
    p.add_argument("--sweep", required=True, help="LMIN:LMAX")
    p.add_argument("--alpha", default="", help="comma-separated Renyi orders")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _config_from_args(args) -> RunConfig:
    config = RunConfig(chain_path=args.chain)
    if args.command == "validate":
        return config
    config.method = args.method
    config.output = args.output
    config.max_dim = args.max_dim
    config.coefficients = dict(_parse_coeff(c) for c in args.coeff)
    if args.command == "spectrum":
        config.block = _parse_pair(args.block, "--block")
    else:
        config.block_start = args.block_start
        config.sweep = _parse_pair(args.sweep, "--sweep")
        config.alphas = _parse_alphas(args.alpha)
        config.jobs = args.jobs
    return config


COMMANDS = {"validate": cmd_validate, "spectrum": cmd_spectrum, "entropy": cmd_entropy_sweep}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        config = _config_from_args(args)
        return COMMANDS[args.command](config)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
