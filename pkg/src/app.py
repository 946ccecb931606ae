"""
Linha de comando do windrose.

Uso:
    python -m src.app solve --input tabuleiro.txt
    python -m src.app census --n 3 --workers 8
    python -m src.app stats solvable-prob --n 101 --samples 100000 --seed 7

A saída legível por máquina vai para stdout (ou --output); logs vão para
stderr. Códigos de saída: 0 sucesso, 1 erro de domínio, 2 erro de uso.
"""

import sys
from pathlib import Path

# Adicionar raiz do projeto ao path para importações funcionarem
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

import argparse
import logging
import re
from typing import Callable, Dict, List, Optional, Sequence

from src.core.board import Board, Position, random_board
from src.core.board_io import read_board, serialize_board
from src.core.exceptions import WindroseError
from src.core.game import validate_game
from src.extensions.cube import estimate_cube_stats, random_cube, read_cube, serialize_cube, solve_cube
from src.extensions.f9 import gb_add, gb_mul, read_generalized, serialize_generalized, solve_generalized
from src.extensions.torus import (
    TorusBoard,
    line_trace,
    random_torus,
    solve_torus,
    torus_bound_check,
    torus_spiral,
)
from src.graphs.board_graph import (
    build_graph,
    degree_report,
    degree_sweep,
    export_dot,
    extremal_edge_totals,
    in_degree_constraint_check,
)
from src.graphs.symmetry import is_isomorphic, symmetry_scan, trivial_changes
from src.search.annealing import long_board_search
from src.search.constructions import duplicate_expand, extremal_degree_board, spiral_board
from src.solver.bfs import solve
from src.solver.reachability import winning_lengths
from src.stats.bounds import bounds_report
from src.stats.census import run_census
from src.stats.estimators import estimate_expected_length, estimate_solvable_probability, sample_solvable_board
from src.utils.config import (
    ANNEAL_BUDGET,
    ANNEAL_RESTARTS,
    CENSUS_ORACLE_FRACTION,
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    ISO_NODE_BUDGET,
)
from src.utils.exporters import to_json, write_text

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    """Combinação de opções que o comando não aceita (código de saída 2)."""


# ===== AUXILIARES DE ENTRADA E SAÍDA =====


def _emit(args: argparse.Namespace, default: str, **producers: Callable[[], str]) -> None:
    """Gera a saída no formato pedido e grava em --output ou stdout."""
    fmt = args.format or default
    if fmt not in producers:
        raise UsageError(f"formato {fmt!r} não disponível para este comando ({', '.join(producers)})")
    text = producers[fmt]()
    if args.output:
        write_text(args.output, text)
    else:
        sys.stdout.write(text)


def _inputs(args: argparse.Namespace, count: int) -> List[str]:
    paths = args.input or []
    if len(paths) != count:
        raise UsageError(f"este comando exige {count} --input (recebido {len(paths)})")
    return paths


def _report_seed(args: argparse.Namespace) -> None:
    # saídas em texto não carregam a semente; ela vai para stderr
    print(f"seed={args.seed}", file=sys.stderr)


def _parse_moves(raw: str) -> List[Position]:
    moves = []
    for token in re.split(r"[;\s]+", raw.strip()):
        if not token:
            continue
        parts = token.split(",")
        if len(parts) != 2 or not all(p.strip().lstrip("-").isdigit() for p in parts):
            raise UsageError(f"jogada inválida {token!r}: use i,j")
        moves.append(Position(int(parts[0]), int(parts[1])))
    return moves


def _parse_indices(raw: Optional[str]) -> List[int]:
    if not raw:
        return []
    try:
        return [int(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"lista de índices inválida {raw!r}") from None


def _record(kind: str, *payload) -> None:
    from src.database.connection import init_database
    from src.database import operations

    init_database()
    recorder = {
        "census": operations.record_census,
        "experiment": operations.record_experiment,
        "search": operations.record_search,
    }[kind]
    success, message = recorder(*payload)
    if success:
        logger.info(f"✅ {message}")
    else:
        logger.warning(f"⚠️ {message}")


def _timing(args: argparse.Namespace) -> bool:
    return not args.no_timing


# ===== COMANDOS DE TABULEIRO =====


def cmd_solve(args: argparse.Namespace) -> int:
    board = read_board(_inputs(args, 1)[0])
    result = solve(board)
    data = result.to_dict()
    data["n"] = board.n
    data["topology"] = board.topology
    if args.cap is not None:
        data["winning_lengths"] = sorted(winning_lengths(board, args.cap))
    _emit(
        args,
        "json",
        json=lambda: to_json(data),
        text=lambda: f"{result.length if result.solvable else 'unsolvable'}\n",
    )
    return 0


def cmd_validate_game(args: argparse.Namespace) -> int:
    board = read_board(_inputs(args, 1)[0])
    if not args.moves:
        raise UsageError("validate-game exige --moves")
    game = validate_game(board, _parse_moves(args.moves))
    _emit(args, "json", json=lambda: to_json(game.to_dict()), text=lambda: f"{game.outcome.value}\n")
    return 0


def cmd_random(args: argparse.Namespace) -> int:
    if args.topology == "torus":
        board: Board = random_torus(args.n, args.seed)
    elif args.solvable:
        board = sample_solvable_board(args.n, args.seed)
    else:
        board = random_board(args.n, args.seed)
    _report_seed(args)
    _emit(
        args,
        "text",
        text=lambda: serialize_board(board),
        json=lambda: to_json({"n": board.n, "seed": args.seed, "board": serialize_board(board)}),
    )
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    result = run_census(args.n, args.workers, args.oracle_fraction, args.seed)
    if args.record:
        _record("census", result.distribution)
    _emit(
        args,
        "json",
        json=lambda: to_json(result.to_dict(_timing(args))),
        csv=lambda: result.distribution.to_csv(),
    )
    return 1 if result.oracle_mismatches else 0


# ===== ESTATÍSTICAS =====


def cmd_solvable_prob(args: argparse.Namespace) -> int:
    report = estimate_solvable_probability(
        args.n, args.samples, args.seed, args.workers, wilson=args.wilson, progress=args.progress
    )
    data = report.to_dict(_timing(args))
    if args.record:
        _record("experiment", data)
    _emit(args, "json", json=lambda: to_json(data), csv=lambda: report.distribution.to_csv())
    return 0


def cmd_expected_length(args: argparse.Namespace) -> int:
    report, dist = estimate_expected_length(
        args.n, args.samples, args.seed, args.workers, progress=args.progress
    )
    data = report.to_dict(_timing(args))
    if args.record:
        _record("experiment", data)
    _emit(args, "json", json=lambda: to_json(data), csv=lambda: dist.to_csv())
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    data = bounds_report(args.n, args.loose_tail)
    _emit(args, "json", json=lambda: to_json(data))
    return 0


# ===== CONSTRUÇÕES E BUSCA =====


def cmd_construct(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "spiral":
        board: Board = spiral_board(args.n)
    elif kind == "extremal-max":
        board = extremal_degree_board(args.n, "max")
    elif kind == "extremal-min":
        board = extremal_degree_board(args.n, "min")
    elif kind == "torus-spiral":
        board = torus_spiral(args.n)
    else:
        source = read_board(_inputs(args, 1)[0])
        board = duplicate_expand(source, _parse_indices(args.rows), _parse_indices(args.cols))
    result = solve(board)
    _emit(
        args,
        "text",
        text=lambda: serialize_board(board),
        json=lambda: to_json(
            {"construction": kind, "n": board.n, "length": result.length, "board": serialize_board(board)}
        ),
    )
    return 0


def cmd_long_board(args: argparse.Namespace) -> int:
    report = long_board_search(
        args.n,
        budget=ANNEAL_BUDGET if args.budget is None else args.budget,
        restarts=args.restarts,
        seed=args.seed,
        workers=args.workers,
        checkpoint=args.checkpoint,
        resume=args.resume,
    )
    if args.record:
        _record("search", report.n, report.seed, report.best_length, serialize_board(report.best_board))
    _emit(
        args,
        "json",
        json=lambda: to_json(report.to_dict(_timing(args))),
        text=lambda: serialize_board(report.best_board),
    )
    return 0


# ===== GRAFOS =====


def cmd_export_dot(args: argparse.Namespace) -> int:
    board = read_board(_inputs(args, 1)[0])
    highlight = solve(board).witness if args.highlight else None
    _emit(args, "text", text=lambda: export_dot(build_graph(board), highlight))
    return 0


def cmd_degrees(args: argparse.Namespace) -> int:
    if not args.input:
        report = degree_sweep(args.n, args.samples, args.seed, args.workers)
        data = report.to_dict(_timing(args))
        if args.record:
            _record("experiment", data)
        _emit(args, "json", json=lambda: to_json(data))
        return 0 if report.ok else 1

    board = read_board(_inputs(args, 1)[0])
    degrees = degree_report(board)
    in_check = in_degree_constraint_check(board)
    violations = degrees.violations + in_check.violations
    data = {
        "op": "degrees",
        "n": board.n,
        "total_edges": degrees.total_edges,
        "max_in": in_check.max_in,
        "in_bound": in_check.bound,
        "violations": [{"i": v.position.i, "j": v.position.j, "rule": v.rule, "value": v.value} for v in violations],
    }
    _emit(args, "json", json=lambda: to_json(data), csv=lambda: degrees.to_frame().to_csv(index=False))
    return 0 if not violations else 1


def cmd_iso(args: argparse.Namespace) -> int:
    first, second = (read_board(p) for p in _inputs(args, 2))
    budget = ISO_NODE_BUDGET if args.budget is None else args.budget
    result = is_isomorphic(first, second, budget)
    _emit(args, "json", json=lambda: to_json(result.to_dict()), text=lambda: f"{result.status.value}\n")
    return 0


def cmd_symmetry_scan(args: argparse.Namespace) -> int:
    budget = ISO_NODE_BUDGET if args.budget is None else args.budget
    report = symmetry_scan(args.n, args.samples, args.seed, args.workers, budget=budget)
    data = report.to_dict(_timing(args))
    if args.record:
        _record("experiment", data)
    _emit(args, "json", json=lambda: to_json(data), text=lambda: "\n".join(report.survivors) + "\n")
    return 0


def cmd_trivial_changes(args: argparse.Namespace) -> int:
    board = read_board(_inputs(args, 1)[0])
    changes: Dict[str, List[str]] = {}
    for pos in board.positions():
        alternatives = trivial_changes(board, pos)
        if alternatives:
            changes[f"{pos.i}_{pos.j}"] = [d.name for d in alternatives]
    _emit(args, "json", json=lambda: to_json({"n": board.n, "trivial_changes": changes}))
    return 0


def cmd_edge_totals(args: argparse.Namespace) -> int:
    totals = extremal_edge_totals(args.n)
    _emit(args, "json", json=lambda: to_json(totals.to_dict()))
    return 0 if totals.verified else 1


# ===== EXTENSÕES =====


def cmd_torus_solve(args: argparse.Namespace) -> int:
    board = TorusBoard.from_board(read_board(_inputs(args, 1)[0]))
    result = solve_torus(board)
    data = result.to_dict()
    data["n"] = board.n
    data["topology"] = "torus"
    if result.witness is not None:
        data["line_trace"] = line_trace(board, result.witness).to_dict()
    _emit(args, "json", json=lambda: to_json(data))
    return 0


def cmd_torus_bound(args: argparse.Namespace) -> int:
    report = torus_bound_check(args.n, args.samples, args.seed, args.workers)
    data = report.to_dict(_timing(args))
    if args.record:
        _record("experiment", data)
    _emit(args, "json", json=lambda: to_json(data))
    return 0 if report.violations == 0 else 1


def cmd_f9(args: argparse.Namespace) -> int:
    if args.kind == "solve":
        matrix = read_generalized(_inputs(args, 1)[0])
        _emit(args, "json", json=lambda: to_json(solve_generalized(matrix).to_dict()))
        return 0
    first, second = (read_generalized(p) for p in _inputs(args, 2))
    result = gb_add(first, second) if args.kind == "add" else gb_mul(first, second)
    _emit(
        args,
        "text",
        text=lambda: serialize_generalized(result),
        json=lambda: to_json(
            {"op": args.kind, "n": result.n, "matrix": serialize_generalized(result), **solve_generalized(result).to_dict()}
        ),
    )
    return 0


def cmd_cube(args: argparse.Namespace) -> int:
    if args.kind == "random":
        cube = random_cube(args.n, args.seed)
        _report_seed(args)
        _emit(args, "text", text=lambda: serialize_cube(cube))
        return 0
    if args.kind == "solve":
        cube = read_cube(_inputs(args, 1)[0])
        _emit(args, "json", json=lambda: to_json(solve_cube(cube).to_dict()))
        return 0
    report = estimate_cube_stats(args.n, args.samples, args.seed, args.workers)
    data = report.to_dict(_timing(args))
    if args.record:
        _record("experiment", data)
    _emit(args, "json", json=lambda: to_json(data))
    return 0


# ===== PARSER =====


def _parents() -> Dict[str, argparse.ArgumentParser]:
    base = argparse.ArgumentParser(add_help=False)
    base.add_argument("--output", help="arquivo de saída (padrão: stdout)")
    base.add_argument("--format", choices=FORMATS, help="formato da saída")
    base.add_argument("--verbose", action="store_true", help="logs de depuração no stderr")

    size = argparse.ArgumentParser(add_help=False)
    size.add_argument("--n", type=int, default=3, help="tamanho ímpar do tabuleiro (padrão 3)")

    random_ = argparse.ArgumentParser(add_help=False)
    random_.add_argument("--seed", type=int, default=DEFAULT_SEED, help="semente (padrão 0)")
    random_.add_argument("--samples", type=int, default=1000, help="número de amostras")
    random_.add_argument(
        "--workers", type=int, default=DEFAULT_WORKERS, help="processos (padrão: WINDROSE_WORKERS ou 1)"
    )
    random_.add_argument("--no-timing", action="store_true", help="omite workers e elapsed_ms da saída")
    random_.add_argument("--record", action="store_true", help="grava o resultado no banco")
    random_.add_argument("--progress", action="store_true", help="barra de progresso no stderr")

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("--input", action="append", help="arquivo de entrada (repetível)")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget", type=int, help="orçamento de iterações / nós de busca")
    return {"base": base, "size": size, "random": random_, "inputs": inputs, "budget": budget}


def build_parser() -> argparse.ArgumentParser:
    """Monta o parser com todos os subcomandos."""
    p = _parents()
    parser = argparse.ArgumentParser(prog="windrose", description="Jogo das setas da rosa dos ventos")
    sub = parser.add_subparsers(dest="command", required=True)

    cmd = sub.add_parser("solve", parents=[p["base"], p["inputs"]], help="resolve um tabuleiro")
    cmd.add_argument("--cap", type=int, help="lista também os comprimentos vencedores até o limite")
    cmd.set_defaults(handler=cmd_solve)

    cmd = sub.add_parser("validate-game", parents=[p["base"], p["inputs"]], help="valida um jogo")
    cmd.add_argument("--moves", help="jogadas 'i,j;i,j;...' a partir de 1,1")
    cmd.set_defaults(handler=cmd_validate_game)

    cmd = sub.add_parser("random", parents=[p["base"], p["size"], p["random"]], help="tabuleiro aleatório")
    cmd.add_argument("--solvable", action="store_true", help="uniforme entre os solúveis")
    cmd.add_argument("--topology", choices=("plain", "torus"), default="plain")
    cmd.set_defaults(handler=cmd_random)

    cmd = sub.add_parser("census", parents=[p["base"], p["size"], p["random"]], help="censo exato 3x3")
    cmd.add_argument(
        "--oracle-fraction", type=float, default=CENSUS_ORACLE_FRACTION, help="fração conferida pelo oráculo"
    )
    cmd.set_defaults(handler=cmd_census)

    stats = sub.add_parser("stats", help="estimadores e cotas").add_subparsers(dest="stat", required=True)
    cmd = stats.add_parser("solvable-prob", parents=[p["base"], p["size"], p["random"]], help="P(solúvel)")
    cmd.add_argument("--wilson", action="store_true", help="intervalo de Wilson em ci95")
    cmd.set_defaults(handler=cmd_solvable_prob)
    cmd = stats.add_parser(
        "expected-length", parents=[p["base"], p["size"], p["random"]], help="comprimento esperado"
    )
    cmd.set_defaults(handler=cmd_expected_length)
    cmd = stats.add_parser("bounds", parents=[p["base"], p["size"]], help="cotas exatas")
    cmd.add_argument("--loose-tail", action="store_true", help="usa a constante folgada da cauda")
    cmd.set_defaults(handler=cmd_bounds)

    cmd = sub.add_parser("construct", parents=[p["base"], p["size"], p["inputs"]], help="construções")
    cmd.add_argument("kind", choices=("spiral", "extremal-max", "extremal-min", "torus-spiral", "duplicate"))
    cmd.add_argument("--rows", help="linhas a duplicar, separadas por vírgula")
    cmd.add_argument("--cols", help="colunas a duplicar, separadas por vírgula")
    cmd.set_defaults(handler=cmd_construct)

    search = sub.add_parser("search", help="busca extremal").add_subparsers(dest="search", required=True)
    cmd = search.add_parser(
        "long-board", parents=[p["base"], p["size"], p["random"], p["budget"]], help="recozimento simulado"
    )
    cmd.add_argument("--restarts", type=int, default=ANNEAL_RESTARTS, help="reinícios independentes")
    cmd.add_argument("--checkpoint", help="arquivo do ponto de retomada")
    cmd.add_argument("--resume", action="store_true", help="retoma do ponto gravado")
    cmd.set_defaults(handler=cmd_long_board)

    graph = sub.add_parser("graph", help="ferramentas de grafo").add_subparsers(dest="graph", required=True)
    cmd = graph.add_parser("export-dot", parents=[p["base"], p["inputs"]], help="exporta G(A) em DOT")
    cmd.add_argument("--highlight", action="store_true", help="destaca o jogo mais curto")
    cmd.set_defaults(handler=cmd_export_dot)
    cmd = graph.add_parser(
        "degrees", parents=[p["base"], p["size"], p["random"], p["inputs"]], help="graus (arquivo ou varredura)"
    )
    cmd.set_defaults(handler=cmd_degrees)
    cmd = graph.add_parser("iso", parents=[p["base"], p["inputs"], p["budget"]], help="teste de isomorfismo")
    cmd.set_defaults(handler=cmd_iso)
    cmd = graph.add_parser(
        "symmetry-scan", parents=[p["base"], p["size"], p["random"], p["budget"]], help="varredura de simetrias"
    )
    cmd.set_defaults(handler=cmd_symmetry_scan)
    cmd = graph.add_parser("trivial-changes", parents=[p["base"], p["inputs"]], help="mudanças triviais")
    cmd.set_defaults(handler=cmd_trivial_changes)
    cmd = graph.add_parser("edge-totals", parents=[p["base"], p["size"]], help="totais extremos de arestas")
    cmd.set_defaults(handler=cmd_edge_totals)

    torus = sub.add_parser("torus", help="variante toroidal").add_subparsers(dest="torus", required=True)
    cmd = torus.add_parser("solve", parents=[p["base"], p["inputs"]], help="resolve no toro")
    cmd.set_defaults(handler=cmd_torus_solve)
    cmd = torus.add_parser("bound-check", parents=[p["base"], p["size"], p["random"]], help="confere a cota 4n")
    cmd.set_defaults(handler=cmd_torus_bound)

    f9 = sub.add_parser("f9", help="tabuleiros sobre F9").add_subparsers(dest="kind", required=True)
    for kind, text in (("add", "soma"), ("mul", "produto"), ("solve", "resolve")):
        cmd = f9.add_parser(kind, parents=[p["base"], p["inputs"]], help=text)
        cmd.set_defaults(handler=cmd_f9)

    cube = sub.add_parser("cube", help="tabuleiros cúbicos").add_subparsers(dest="kind", required=True)
    cmd = cube.add_parser("random", parents=[p["base"], p["size"], p["random"]], help="cubo aleatório")
    cmd.set_defaults(handler=cmd_cube)
    cmd = cube.add_parser("solve", parents=[p["base"], p["inputs"]], help="resolve um cubo")
    cmd.set_defaults(handler=cmd_cube)
    cmd = cube.add_parser("stats", parents=[p["base"], p["size"], p["random"]], help="P(solúvel) no cubo")
    cmd.set_defaults(handler=cmd_cube)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Executa um comando.

    Args:
        argv: Argumentos (padrão: sys.argv[1:]).

    Returns:
        Código de saída: 0 sucesso, 1 erro de domínio, 2 erro de uso.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except UsageError as e:
        print(f"windrose: erro: {e}", file=sys.stderr)
        return 2
    except (WindroseError, OSError) as e:
        logger.debug(f"❌ Falha em {args.command}: {e}", exc_info=True)
        print(f"windrose: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
