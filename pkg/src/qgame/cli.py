"""Command-line frontend.

Subcommands: iso, lift-verify, ne, surface, identities. Exit codes are
stable: 0 success/affirmative, 1 negative finding, 2 input error,
3 output I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .ewl import (
    EwlGame,
    StrategySpace,
    parse_space,
    unrestricted_payoffs,
)
from .games import (
    GameMapping,
    find_strong_isomorphisms,
    strategic_equivalence,
)
from .gamefile import GameFile, GameFileError, load_game_file
from .lift import LIFT_TOL, lift, operator_identity_suite, verify_lift
from .linalg import TWO_PI, SU2Params
from .search import ParamGrid, grid_pure_ne

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_IO = 3


@dataclass
class RunReport:
    """Deterministic, printable record of one command invocation."""

    command: str
    seed: int | None = None
    tolerances: dict = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)
    verdict: str = ""

    def render(self) -> str:
        head = [f"# command: {self.command}"]
        if self.seed is not None:
            head.append(f"# seed: {self.seed}")
        if self.tolerances:
            tols = " ".join(f"{k}={v:g}" for k, v in self.tolerances.items())
            head.append(f"# tolerances: {tols}")
        body = list(self.lines)
        if self.verdict:
            body.append(f"verdict: {self.verdict}")
        return "\n".join(head + body)


def _default_seed(value) -> int:
    if value is not None:
        return int(value)
    return int(os.environ.get("QGAME_SEED", "0"))


def _load(path):
    try:
        return load_game_file(path)
    except FileNotFoundError:
        raise GameFileError(f"no such file: {path}")
    except OSError as exc:
        raise GameFileError(f"cannot read {path}: {exc}")


def _describe_mapping(f: GameMapping, ga, gb) -> str:
    players = ", ".join(f"{i + 1}->{k + 1}" for i, k in enumerate(f.eta))
    parts = [f"players ({players})"]
    for i, phi in enumerate(f.phi):
        pairs = ", ".join(
            f"{ga.labels[i][k]}->{gb.labels[f.eta[i]][phi[k]]}" for k in range(len(phi))
        )
        parts.append(f"{i + 1}: {pairs}")
    return "; ".join(parts)


def cmd_iso(args) -> int:
    report = RunReport(command=f"iso {args.game_a} {args.game_b}")
    ga, gb = _load(args.game_a).game, _load(args.game_b).game
    isos = find_strong_isomorphisms(ga, gb)
    for k, f in enumerate(isos, start=1):
        report.lines.append(f"iso {k}: {_describe_mapping(f, ga, gb)}")
    if not isos:
        report.lines.append("no strong isomorphism")
    if ga.labels == gb.labels:
        fit = strategic_equivalence(ga, gb)
        if fit is None:
            report.lines.append("strategic equivalence: none")
        else:
            pairs = "; ".join(
                f"player {i + 1}: alpha={a:g} beta={b:g}" for i, (a, b) in enumerate(fit)
            )
            report.lines.append(f"strategic equivalence: {pairs}")
    report.verdict = "isomorphic" if isos else "not isomorphic"
    print(report.render())
    return EXIT_OK if isos else EXIT_NEGATIVE


def cmd_lift_verify(args) -> int:
    seed = _default_seed(args.seed)
    report = RunReport(
        command=f"lift-verify {args.game_a} {args.game_b}",
        seed=seed,
        tolerances={"payoff": LIFT_TOL},
    )
    fa, fb = _load(args.game_a), _load(args.game_b)
    ga, gb = fa.game, fb.game
    isos = find_strong_isomorphisms(ga, gb)
    if not isos:
        report.verdict = "no strong isomorphism to lift"
        print(report.render())
        return EXIT_NEGATIVE
    qa = EwlGame(ga, fa.spaces)
    qb = EwlGame(gb, fb.spaces)
    all_ok = True
    for k, f in enumerate(isos, start=1):
        lm = lift(f, ga)
        res = verify_lift(lm, qa, qb, samples=args.samples, seed=seed)
        status = "pass" if res.passed else "FAIL"
        extra = ""
        if res.space_escapes:
            pos = ", ".join(str(k + 1) for k in res.space_escapes)
            extra = f" (space-escape at position {pos})"
            status = "space-escape"
        report.lines.append(
            f"iso {k}: {_describe_mapping(f, ga, gb)} | "
            f"max deviation {res.max_deviation:.3e} over {res.samples} samples "
            f"-> {status}{extra}"
        )
        all_ok &= res.passed
    report.verdict = "all lifted mappings verified" if all_ok else "verification failed"
    print(report.render())
    return EXIT_OK if all_ok else EXIT_NEGATIVE


def _parse_grid(spec: str, players: int) -> ParamGrid:
    parts = [p for p in spec.split(",") if p.strip()]
    if len(parts) != 3:
        raise ValueError(f"grid must be t,a,b step counts, got {spec!r}")
    t, a, b = (int(p) for p in parts)
    return ParamGrid.uniform(players, t, a, b)


def _parse_spaces(spec: str, players: int) -> tuple[StrategySpace, ...]:
    names = [s for s in spec.split(",") if s.strip()]
    if len(names) == 1:
        names = names * players
    if len(names) != players:
        raise ValueError(f"need one space per player, got {len(names)} for {players}")
    return tuple(parse_space(s) for s in names)


def cmd_ne(args) -> int:
    report = RunReport(
        command=f"ne {args.game}", tolerances={"eps": args.eps}
    )
    gf = _load(args.game)
    g = gf.game
    spaces = gf.spaces
    if args.spaces:
        spaces = _parse_spaces(args.spaces, g.n_players)
    game = EwlGame(g, spaces)
    grid = _parse_grid(args.grid, g.n_players)
    found = grid_pure_ne(game, grid, eps=args.eps)
    space_names = ",".join(s.value for s in game.spaces)
    report.lines.append(f"spaces: {space_names}; grid: {args.grid}; profiles found: {len(found)}")
    rows = []
    for eq in found:
        angles = " ".join(
            f"({p.theta:.6g},{p.alpha:.6g},{p.beta:.6g})" for p in eq.profile
        )
        pays = " ".join(f"{v:.10g}" for v in eq.payoffs)
        report.lines.append(f"  {angles} payoffs [{pays}] improvement {eq.eps:.3e}")
        rows.append((eq.profile, eq.payoffs, eq.eps))
    report.verdict = f"{len(found)} equilibria" if found else "no equilibria"
    print(report.render())
    if args.csv:
        try:
            _write_ne_csv(args.csv, g.n_players, rows)
        except OSError as exc:
            print(f"cannot write {args.csv}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK if found else EXIT_NEGATIVE


def _write_ne_csv(path, players, rows):
    cols = []
    for i in range(1, players + 1):
        cols += [f"theta{i}", f"alpha{i}", f"beta{i}"]
    cols += [f"payoff{i}" for i in range(1, players + 1)] + ["improvement"]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(cols) + "\n")
        for profile, payoffs, eps in rows:
            vals = []
            for p in profile:
                vals += [p.theta, p.alpha, p.beta]
            vals += list(payoffs) + [eps]
            fh.write(",".join(format(v, ".15g") for v in vals) + "\n")


def _parse_params(spec: str) -> SU2Params:
    parts = [float(v) for v in spec.split(",") if v.strip()]
    if len(parts) == 2:
        parts.append(0.0)
    if len(parts) != 3:
        raise ValueError(f"opponent parameters must be theta,alpha[,beta], got {spec!r}")
    return SU2Params(*parts)


def cmd_surface(args) -> int:
    gf = _load(args.game)
    g = gf.game
    if g.n_players != 2:
        raise GameFileError("surface needs a 2-player game")
    game = EwlGame(g)
    mover = args.player - 1
    if mover not in (0, 1):
        raise GameFileError("player must be 1 or 2")
    opponent = _parse_params(args.opponent)
    parts = [int(v) for v in args.grid.split(",") if v.strip()]
    if len(parts) != 2:
        raise GameFileError(f"surface grid must be theta_steps,alpha_steps, got {args.grid!r}")
    t_steps, a_steps = parts
    if t_steps < 1 or a_steps < 1:
        raise GameFileError("grid steps must be positive")
    thetas = np.linspace(0.0, math.pi, t_steps) if t_steps > 1 else [0.0]
    alphas = np.linspace(0.0, TWO_PI, a_steps) if a_steps > 1 else [0.0]
    lines = ["theta,alpha,payoff1,payoff2"]
    for t in thetas:
        for a in alphas:
            mine = SU2Params(t, a, 0.0)
            profile = (mine, opponent) if mover == 0 else (opponent, mine)
            u = unrestricted_payoffs(game, profile)
            lines.append(
                ",".join(format(v, ".15g") for v in (t, float(a) % TWO_PI, u[0], u[1]))
            )
    text = "\n".join(lines) + "\n"
    if args.csv:
        try:
            with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write {args.csv}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_identities(args) -> int:
    seed = _default_seed(args.seed)
    res = operator_identity_suite(draws=args.samples, seed=seed)
    report = RunReport(
        command="identities",
        seed=seed,
        tolerances={"entrywise": res.tolerance},
    )
    for c in res.checks:
        report.lines.append(
            f"{c.name}: max error {c.max_error:.3e} -> {'pass' if c.passed else 'FAIL'}"
        )
    report.verdict = "all identities hold" if res.passed else "identity check failed"
    print(report.render())
    return EXIT_OK if res.passed else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgame",
        description="EWL quantum games: isomorphism search, lifted mappings, equilibria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iso", help="find all strong isomorphisms between two games")
    p.add_argument("game_a")
    p.add_argument("game_b")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser(
        "lift-verify", help="lift every strong isomorphism and verify payoff equality"
    )
    p.add_argument("game_a")
    p.add_argument("game_b")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_lift_verify)

    p = sub.add_parser("ne", help="grid search for pure equilibria of the quantum game")
    p.add_argument("game")
    p.add_argument("--spaces", default=None, help="comma-separated per-player space names")
    p.add_argument("--grid", default="17,33,1", help="theta,alpha,beta step counts")
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_ne)

    p = sub.add_parser("surface", help="payoff landscape CSV for one player's (theta, alpha)")
    p.add_argument("game")
    p.add_argument("--player", type=int, default=1)
    p.add_argument("--opponent", default="0,0", help="fixed opponent theta,alpha[,beta]")
    p.add_argument("--grid", default="17,33", help="theta,alpha step counts")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("identities", help="run the operator identity checks")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_identities)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GameFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
