"""Budgeted-probing ILP: build, write as LP text, parse back, solve.

The formulation collapses every black node into a single root r (index 0).
With x_u_j meaning "u is selected within the first j steps" and y_u meaning
"u ends up observed":

    maximize  sum_u y_u - (|N(r)| + 1)
    s.t.      x_0_0 = 1;  x_u_0 = 0 for u != r
              sum_{u != r} x_u_k <= k
              y_u <= sum_{v in N(u)} x_v_k + x_u_k
              x_u_j <= x_u_{j+1}                      (j = 0..k-1)
              x_u_j <= x_u_{j-1} + sum_{v in N(u)} x_v_{j-1}   (j = 1..k)
              all variables binary

The y-row includes the node's own selection indicator (a probed node is by
definition observed), which is redundant everywhere except the root row and
makes the optimum equal the exhaustive search value exactly.  The budget row
skips the root, whose x-chain is pinned to 1.
"""

from dataclasses import dataclass, field

import numpy as np

from .graph import BLACK


@dataclass
class Constraint:
    name: str
    coeffs: dict        # var name -> coefficient
    sense: str          # "<=", ">=", "="
    rhs: float


@dataclass
class LPProblem:
    sense: str                  # "maximize" or "minimize"
    objective: dict             # var name -> coefficient
    constant: float
    constraints: list
    binaries: list
    comments: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def variables(self):
        seen = dict.fromkeys(self.binaries)
        for v in self.objective:
            seen.setdefault(v)
        for c in self.constraints:
            for v in c.coeffs:
                seen.setdefault(v)
        return list(seen)


def build_probe_ilp(view, k):
    """Collapse the view and emit the budgeted-probing ILP."""
    if k < 0:
        raise ValueError("need k >= 0")
    g = view.graph
    color = view.color
    ids = [v for v in range(g.n) if color[v] != BLACK]
    index = {v: i + 1 for i, v in enumerate(ids)}  # 0 is the collapsed root
    n = len(ids) + 1
    nbrs = {i: set() for i in range(n)}
    for v in ids:
        i = index[v]
        for w in g.neighbors(v):
            if color[w] == BLACK:
                nbrs[i].add(0)
                nbrs[0].add(i)
            else:
                nbrs[i].add(index[int(w)])
    root_deg = len(nbrs[0])

    objective = {f"y_{u}": 1.0 for u in range(n)}
    constant = -(root_deg + 1.0)
    cons = [Constraint("fix_0", {"x_0_0": 1.0}, "=", 1.0)]
    for u in range(1, n):
        cons.append(Constraint(f"fix_{u}", {f"x_{u}_0": 1.0}, "=", 0.0))
    cons.append(Constraint(
        "budget", {f"x_{u}_{k}": 1.0 for u in range(1, n)}, "<=", float(k)))
    for u in range(n):
        row = {f"y_{u}": 1.0}
        for v in nbrs[u]:
            row[f"x_{v}_{k}"] = -1.0
        row[f"x_{u}_{k}"] = row.get(f"x_{u}_{k}", 0.0) - 1.0
        cons.append(Constraint(f"obs_{u}", row, "<=", 0.0))
    for u in range(n):
        for j in range(k):
            cons.append(Constraint(
                f"mono_{u}_{j}",
                {f"x_{u}_{j}": 1.0, f"x_{u}_{j + 1}": -1.0}, "<=", 0.0))
    for u in range(n):
        for j in range(1, k + 1):
            row = {f"x_{u}_{j}": 1.0, f"x_{u}_{j - 1}": -1.0}
            for v in nbrs[u]:
                row[f"x_{v}_{j - 1}"] = row.get(f"x_{v}_{j - 1}", 0.0) - 1.0
            cons.append(Constraint(f"layer_{u}_{j}", row, "<=", 0.0))

    binaries = [f"x_{u}_{j}" for u in range(n) for j in range(k + 1)]
    binaries += [f"y_{u}" for u in range(n)]
    comments = [
        f"budgeted probing ILP: {n} collapsed nodes (root=0), budget k={k}",
        "x_u_j = node u selected within the first j steps; y_u = u observed",
    ]
    meta = {"node_of_index": {index[v]: int(v) for v in ids},
            "root_degree": root_deg, "k": k, "n": n}
    return LPProblem(sense="maximize", objective=objective, constant=constant,
                     constraints=cons, binaries=binaries, comments=comments,
                     meta=meta)


def _format_terms(coeffs, constant=0.0):
    parts = []
    for var, coef in coeffs.items():
        if coef == 0:
            continue
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        if mag == 1:
            parts.append(f"{sign} {var}")
        else:
            mag_s = f"{mag:g}"
            parts.append(f"{sign} {mag_s} {var}")
    if constant:
        sign = "-" if constant < 0 else "+"
        parts.append(f"{sign} {abs(constant):g}")
    if not parts:
        return "0"
    text = " ".join(parts)
    if text.startswith("+ "):
        text = text[2:]
    return text


def _wrap(line, width=76):
    out = []
    while len(line) > width:
        cut = line.rfind(" ", 0, width)
        if cut <= 0:
            break
        out.append(line[:cut])
        line = " " + line[cut + 1:]
    out.append(line)
    return out


def format_lp(problem):
    """Serialize to the textual LP grammar (CPLEX-style sections)."""
    lines = [f"\\ {c}" for c in problem.comments]
    lines.append("Maximize" if problem.sense == "maximize" else "Minimize")
    obj = _format_terms(problem.objective, problem.constant)
    lines.extend(_wrap(f" obj: {obj}"))
    lines.append("Subject To")
    for c in problem.constraints:
        body = _format_terms(c.coeffs)
        lines.extend(_wrap(f" {c.name}: {body} {c.sense} {c.rhs:g}"))
    if problem.binaries:
        lines.append("Binaries")
        row = " "
        for name in problem.binaries:
            if len(row) + len(name) + 1 > 76:
                lines.append(row)
                row = " "
            row += name + " "
        if row.strip():
            lines.append(row)
    lines.append("End")
    return "\n".join(line.rstrip() for line in lines) + "\n"


class LPParseError(ValueError):
    pass


_SECTION_STARTS = {
    "maximize": "maximize", "maximise": "maximize", "max": "maximize",
    "minimize": "minimize", "minimise": "minimize", "min": "minimize",
    "subject": "subject_to", "st": "subject_to", "s.t.": "subject_to",
    "binaries": "binaries", "binary": "binaries", "bin": "binaries",
    "end": "end",
}


def _tokenize(text):
    import re

    tokens = []
    pat = re.compile(
        r"(?P<id>[A-Za-z_][A-Za-z0-9_\.]*)"
        r"|(?P<num>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+)"
        r"|(?P<op><=|>=|=<|=>|=|\+|-|:)")
    for m in pat.finditer(text):
        kind = m.lastgroup
        tok = m.group()
        if kind == "op" and tok in ("=<", "=>"):
            tok = "<=" if tok == "=<" else ">="
        tokens.append((kind, tok))
    return tokens


def _parse_expr(tokens, i):
    """Parse a linear expression; stop at a sense token or end of tokens.

    Returns (coeffs, constant, next_index).
    """
    coeffs = {}
    constant = 0.0
    sign = 1.0
    pending = None
    while i < len(tokens):
        kind, tok = tokens[i]
        if kind == "op" and tok in ("<=", ">=", "="):
            break
        if kind == "op" and tok in ("+", "-"):
            if pending is not None:
                constant += sign * pending
                pending = None
            sign = 1.0 if tok == "+" else -1.0
            i += 1
        elif kind == "num":
            if pending is not None:
                constant += sign * pending
            pending = float(tok)
            i += 1
        elif kind == "id":
            coef = sign * (pending if pending is not None else 1.0)
            coeffs[tok] = coeffs.get(tok, 0.0) + coef
            pending = None
            sign = 1.0
            i += 1
        else:
            raise LPParseError(f"unexpected token {tok!r} in expression")
    if pending is not None:
        constant += sign * pending
    return coeffs, constant, i


def _parse_constant(tokens, i):
    """Parse the right-hand side: one signed constant, as LP format requires.

    Stopping after the single number keeps constraint boundaries unambiguous
    when all constraint lines are tokenized into one stream.
    """
    sign = 1.0
    while i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] in "+-":
        if tokens[i][1] == "-":
            sign = -sign
        i += 1
    if i >= len(tokens) or tokens[i][0] != "num":
        raise LPParseError("missing constant on right-hand side")
    return sign * float(tokens[i][1]), i + 1


def parse_lp(text):
    """Parse LP text produced by format_lp (plus common variants)."""
    # strip comments
    lines = []
    for raw in text.splitlines():
        lines.append(raw.split("\\", 1)[0])

    sections = {}
    current = None
    for line in lines:
        stripped = line.strip()
        if not stripped:
            continue
        first = stripped.split()[0].lower().rstrip(":")
        rest = None
        if first in _SECTION_STARTS:
            name = _SECTION_STARTS[first]
            if name == "subject_to":
                low = stripped.lower()
                if low.startswith("subject to"):
                    rest = stripped[len("subject to"):]
                else:
                    rest = stripped.split(None, 1)[1] if " " in stripped else ""
            else:
                rest = stripped.split(None, 1)[1] if " " in stripped else ""
            current = name
            sections.setdefault(current, [])
            if rest and rest.strip():
                sections[current].append(rest)
            continue
        if current is None:
            raise LPParseError(f"content before any section: {stripped!r}")
        sections[current].append(stripped)

    sense = "maximize" if "maximize" in sections else "minimize"
    if "maximize" not in sections and "minimize" not in sections:
        raise LPParseError("no objective section")
    obj_tokens = _tokenize(" ".join(sections.get(sense, [])))
    i = 0
    if (len(obj_tokens) >= 2 and obj_tokens[0][0] == "id"
            and obj_tokens[1][1] == ":"):
        i = 2
    objective, constant, i = _parse_expr(obj_tokens, i)
    if i != len(obj_tokens):
        raise LPParseError("trailing tokens in objective")

    constraints = []
    tokens = _tokenize(" ".join(sections.get("subject_to", [])))
    i = 0
    unnamed = 0
    while i < len(tokens):
        name = None
        if (i + 1 < len(tokens) and tokens[i][0] == "id"
                and tokens[i + 1][1] == ":"):
            name = tokens[i][1]
            i += 2
        coeffs, shift, i = _parse_expr(tokens, i)
        if i >= len(tokens) or tokens[i][1] not in ("<=", ">=", "="):
            raise LPParseError("constraint missing sense")
        sense_tok = tokens[i][1]
        i += 1
        rhs_const, i = _parse_constant(tokens, i)
        if name is None:
            name = f"c{unnamed}"
            unnamed += 1
        constraints.append(
            Constraint(name, coeffs, sense_tok, rhs_const - shift))

    binaries = [tok for kind, tok in
                _tokenize(" ".join(sections.get("binaries", [])))
                if kind == "id"]
    return LPProblem(sense=sense, objective=objective, constant=constant,
                     constraints=constraints, binaries=binaries)


def solve_lp(problem):
    """Solve a parsed binary program with scipy's MILP (HiGHS).

    Returns (objective_value, assignment dict).  Intended for the small
    cross-check instances, not production-scale solving.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp

    variables = problem.variables()
    pos = {v: j for j, v in enumerate(variables)}
    nvar = len(variables)
    c = np.zeros(nvar)
    for v, coef in problem.objective.items():
        c[pos[v]] = coef
    if problem.sense == "maximize":
        c = -c
    rows = []
    lbs = []
    ubs = []
    for con in problem.constraints:
        row = np.zeros(nvar)
        for v, coef in con.coeffs.items():
            row[pos[v]] = coef
        rows.append(row)
        if con.sense == "<=":
            lbs.append(-np.inf)
            ubs.append(con.rhs)
        elif con.sense == ">=":
            lbs.append(con.rhs)
            ubs.append(np.inf)
        else:
            lbs.append(con.rhs)
            ubs.append(con.rhs)
    binary = np.zeros(nvar, dtype=bool)
    for v in problem.binaries:
        binary[pos[v]] = True
    lo = np.where(binary, 0.0, -np.inf)
    hi = np.where(binary, 1.0, np.inf)
    res = milp(c=c,
               constraints=LinearConstraint(np.array(rows), lbs, ubs),
               integrality=binary.astype(int),
               bounds=Bounds(lo, hi))
    if res.status != 0:
        raise RuntimeError(f"milp failed: {res.message}")
    value = float(res.fun)
    if problem.sense == "maximize":
        value = -value
    assignment = {v: float(res.x[pos[v]]) for v in variables}
    return value + problem.constant, assignment
