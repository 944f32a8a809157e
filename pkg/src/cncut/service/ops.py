"""Operation layer shared by the CLI and the HTTP service.

Every function takes file-format text plus explicit overrides, runs the
requested computation, and returns a JSON-ready dict.  Malformed inputs
raise FormatError/ValueError and size refusals raise CapExceeded; the
front ends map those to exit codes (1/2) or HTTP statuses (400/409).

Emitted pair counts always come from a Solution, whose value is an exact
recomputation on the input graph minus the witness; an extra assertion
here re-checks that before anything leaves the process.
"""
from __future__ import annotations

import time

from ..cliquewidth import count_cw, evaluate_cw, parse_cw, solve_cw
from ..fileio import (
    format_graph,
    parse_bin_packing,
    parse_graph,
    parse_multicolored,
)
from ..generate import random_graph
from ..graph import (
    Graph,
    Instance,
    delete_vertices,
    pairs,
    parameter_report,
)
from ..maxleaf import solve_maxleaf
from ..mcclique import McInstance, reduce_mc
from ..modular import MDNode, modular_decomposition, modular_width, solve_mw
from ..oracle import solve_bruteforce
from ..rubp import RubpInstance, reduce_rubp
from ..tdecomp import format_td, heuristic_td, parse_td, validate_td
from ..treewidth import solve_tw
from ..vertex_integrity import solve_vi

ALGORITHMS = ("oracle", "maxleaf", "vi", "mw", "cw", "tw-exact", "tw-apx")

# cap names accepted per operation; values override the module defaults
SOLVE_CAPS = {"enum", "branch", "separator", "component", "width", "size"}
COUNT_CAPS = {"width", "size"}
REDUCE_CAPS = {"expansion", "vertex"}


def _check_caps(caps: dict | None, allowed: set[str]) -> dict:
    caps = dict(caps or {})
    for name, value in caps.items():
        if name not in allowed:
            raise ValueError(f"unknown cap {name!r}; expected one of {sorted(allowed)}")
        if not isinstance(value, int) or value < 1:
            raise ValueError(f"cap {name!r} must be a positive integer")
    return caps


def _resolve_budget(
    file_budget: int | None, file_bound: int | None, budget: int | None, bound: int | None
) -> tuple[int, int | None]:
    budget = budget if budget is not None else file_budget
    bound = bound if bound is not None else file_bound
    if budget is None:
        raise ValueError("no budget: pass k or include a 'b' line in the graph file")
    return budget, bound


def solve_record(
    algo: str,
    graph_text: str | None = None,
    expr_text: str | None = None,
    td_text: str | None = None,
    eps: float | None = None,
    budget: int | None = None,
    bound: int | None = None,
    caps: dict | None = None,
) -> dict:
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
    caps = _check_caps(caps, SOLVE_CAPS)

    expr = None
    file_budget = file_bound = None
    g: Graph | None = None
    if graph_text is not None:
        g, file_budget, file_bound = parse_graph(graph_text)
    if algo == "cw":
        if expr_text is None:
            raise ValueError("algorithm cw needs an expression")
        expr = parse_cw(expr_text)
        built, _ = evaluate_cw(expr)
        if g is not None and (g.n != built.n or sorted(g.edges()) != sorted(built.edges())):
            raise ValueError("expression does not evaluate to the supplied graph")
        g = built
    elif g is None:
        raise ValueError(f"algorithm {algo} needs a graph file")

    td = None
    if td_text is not None:
        if algo not in ("tw-exact", "tw-apx"):
            raise ValueError("a tree decomposition only applies to tw-exact or tw-apx")
        td = parse_td(td_text)
        validate_td(td, g)
    if algo == "tw-apx" and eps is None:
        raise ValueError("tw-apx needs eps")
    if eps is not None and algo != "tw-apx":
        raise ValueError("eps only applies to tw-apx")

    budget, bound = _resolve_budget(file_budget, file_bound, budget, bound)
    inst = Instance(graph=g, budget=budget)

    started = time.perf_counter()
    if algo == "oracle":
        kwargs = {"cap": caps["enum"]} if "enum" in caps else {}
        _, _, solution = solve_bruteforce(inst, **kwargs)
    elif algo == "maxleaf":
        kwargs = {"branch_cap": caps["branch"]} if "branch" in caps else {}
        solution = solve_maxleaf(inst, **kwargs)
    elif algo == "vi":
        kwargs = {}
        if "separator" in caps:
            kwargs["separator_cap"] = caps["separator"]
        if "component" in caps:
            kwargs["component_cap"] = caps["component"]
        solution = solve_vi(inst, **kwargs)
    elif algo == "mw":
        kwargs = {"width_cap": caps["width"]} if "width" in caps else {}
        solution = solve_mw(inst, **kwargs)
    elif algo == "cw":
        kwargs = {}
        if "width" in caps:
            kwargs["width_cap"] = caps["width"]
        if "size" in caps:
            kwargs["size_cap"] = caps["size"]
        solution = solve_cw(expr, budget, **kwargs)
    else:
        kwargs = {"width_cap": caps["width"]} if "width" in caps else {}
        mode = "exact" if algo == "tw-exact" else "apx"
        solution = solve_tw(inst, mode=mode, eps=eps, td=td, **kwargs)
    wall_ms = (time.perf_counter() - started) * 1000.0

    # nothing leaves the process without an independent recount
    assert solution.pair_count == pairs(delete_vertices(g, solution.deleted)[0])
    record = {
        "command": "solve",
        "algo": algo,
        "n": g.n,
        "budget": budget,
        "pairs": solution.pair_count,
        "witness": [v + 1 for v in sorted(solution.deleted)],
        "optimal": solution.optimal,
        "wall_ms": round(wall_ms, 3),
    }
    if eps is not None:
        record["eps"] = eps
    if bound is not None:
        record["bound"] = bound
        record["decision"] = solution.pair_count <= bound
    return record


def count_record(
    expr_text: str, budget: int | None = None, caps: dict | None = None
) -> dict:
    caps = _check_caps(caps, COUNT_CAPS)
    expr = parse_cw(expr_text)
    if budget is not None and not (0 <= budget <= expr.n):
        raise ValueError("k must lie in [0, n]")
    kwargs = {}
    if "width" in caps:
        kwargs["width_cap"] = caps["width"]
    if "size" in caps:
        kwargs["size_cap"] = caps["size"]
    rows = count_cw(expr, kmax=budget, **kwargs)
    if budget is not None:
        rows = rows[budget:]
    return {
        "command": "count",
        "n": expr.n,
        "width": expr.width,
        "rows": [
            {
                "k": row.budget,
                "min": row.best_pairs,
                "count": row.optimum_count,
                "witness": [v + 1 for v in row.witness],
            }
            for row in rows
        ],
    }


def params_record(graph_text: str) -> dict:
    g, _, _ = parse_graph(graph_text)
    report = parameter_report(g)
    return {
        "command": "params",
        "n": g.n,
        "m": g.edge_count,
        "fes": report.feedback_edge_count,
        "max_degree": report.max_degree,
        "components": report.component_count,
        "expanded_n": report.expanded_n,
    }


def reduce_rubp_record(packing_text: str, caps: dict | None = None) -> dict:
    caps = _check_caps(caps, REDUCE_CAPS)
    bins, items = parse_bin_packing(packing_text)
    kwargs = {"expansion_cap": caps["expansion"]} if "expansion" in caps else {}
    red = reduce_rubp(RubpInstance(bins=bins, items=tuple(items)), **kwargs)
    return {
        "command": "reduce",
        "kind": "rubp",
        "constants": red.constants,
        "weighted_n": red.weighted.graph.n,
        "expanded_n": red.expanded.graph.n,
        "roles": [list(role) for role in red.roles],
        "instance": format_graph(
            red.expanded.graph, red.expanded.budget, red.expanded.pair_bound
        ),
    }


def reduce_mc_record(mc_text: str, caps: dict | None = None) -> dict:
    caps = _check_caps(caps, REDUCE_CAPS)
    k, n, edges = parse_multicolored(mc_text)
    kwargs = {"vertex_cap": caps["vertex"]} if "vertex" in caps else {}
    red = reduce_mc(McInstance(colors=k, size=n, edges=tuple(edges)), **kwargs)
    return {
        "command": "reduce",
        "kind": "mc",
        "constants": red.constants,
        "expanded_n": red.instance.graph.n,
        "roles": [list(role) for role in red.roles],
        "instance": format_graph(
            red.instance.graph, red.instance.budget, red.instance.pair_bound
        ),
    }


def verify_record(
    graph_text: str,
    deleted: list[int],
    budget: int | None = None,
    bound: int | None = None,
) -> dict:
    g, file_budget, file_bound = parse_graph(graph_text)
    budget = budget if budget is not None else file_budget
    bound = bound if bound is not None else file_bound
    if budget is None and bound is None:
        raise ValueError("nothing to verify: pass k, x, or a 'b' line in the graph file")
    seen = set()
    for v in deleted:
        if not (1 <= v <= g.n):
            raise ValueError(f"vertex {v} out of range [1, {g.n}]")
        if v in seen:
            raise ValueError(f"vertex {v} deleted twice")
        seen.add(v)
    value = pairs(delete_vertices(g, [v - 1 for v in deleted])[0])
    record = {
        "command": "verify-witness",
        "n": g.n,
        "deleted": sorted(deleted),
        "pairs": value,
    }
    checks = []
    if budget is not None:
        record["budget"] = budget
        record["size_ok"] = len(deleted) <= budget
        checks.append(record["size_ok"])
    if bound is not None:
        record["bound"] = bound
        record["pairs_ok"] = value <= bound
        checks.append(record["pairs_ok"])
    record["pass"] = all(checks)
    return record


def generate_record(n: int, p: float, seed: int) -> dict:
    g = random_graph(n, p, seed)
    return {
        "command": "gen-random",
        "n": g.n,
        "m": g.edge_count,
        "seed": seed,
        "graph": format_graph(g),
    }


def _render_md(node: MDNode, depth: int = 0) -> list[str]:
    label = ",".join(str(v + 1) for v in node.vertices)
    lines = [f"{'  ' * depth}{node.kind} {{{label}}}"]
    for child in node.children:
        lines.extend(_render_md(child, depth + 1))
    return lines


def decomp_record(kind: str, graph_text: str) -> dict:
    g, _, _ = parse_graph(graph_text)
    if kind == "md":
        tree = modular_decomposition(g)
        text = "\n".join(_render_md(tree)) + "\n"
        width = modular_width(tree)
    elif kind == "td":
        td = heuristic_td(g)
        text = format_td(td)
        width = td.width
    else:
        raise ValueError(f"unknown decomposition kind {kind!r}; expected md or td")
    return {"command": "decomp", "kind": kind, "width": width, "text": text}
