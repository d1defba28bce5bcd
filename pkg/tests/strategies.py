"""Hypothesis strategies for schema-valid documents."""

from hypothesis import strategies as st

from conftest import match_doc, team


@st.composite
def innings_chains(draw, prefix="P", max_parts=10):
    n_parts = draw(st.integers(1, max_parts))
    order = [f"{prefix}{k}" for k in range(11)]
    order = draw(st.permutations(order))
    crease = [order[0], order[1]]
    nxt = 2
    parts = []
    for k in range(n_parts):
        runs = draw(st.integers(0, 200))
        a, b = crease if draw(st.booleans()) else crease[::-1]
        parts.append({"batsman_a": a, "batsman_b": b, "runs": runs})
        if k == n_parts - 1:
            break
        out = draw(st.integers(0, 1))
        crease[out] = order[nxt]
        nxt += 1
    return parts


@st.composite
def team_docs(draw, name, prefix, n_innings):
    innings = [draw(innings_chains(prefix)) for _ in range(n_innings)]
    batsmen = sorted({p[k] for inn in innings for p in inn for k in ("batsman_a", "batsman_b")})
    captain = draw(st.sampled_from(batsmen))
    runs = sum(p["runs"] for inn in innings for p in inn) + draw(st.integers(0, 30))
    whole = draw(st.integers(1, 90))
    ball = draw(st.integers(0, 5))
    overs = f"{whole}.{ball}" if draw(st.booleans()) or ball else str(whole)
    extra = {}
    if draw(st.booleans()):
        extra["squad"] = draw(st.permutations(batsmen + [f"{prefix}-res"]))
    return team(name, captain, innings, runs_total=runs, overs=overs, **extra)


@st.composite
def match_docs(draw, match_id=None):
    fmt = draw(st.sampled_from(["ODI", "TEST"]))
    n_innings = 1 if fmt == "ODI" else draw(st.integers(1, 2))
    outcomes = ["TEAM1_WIN", "TEAM2_WIN", "TIE"] + (["DRAW"] if fmt == "TEST" else [])
    mid = match_id or draw(st.from_regex(r"[a-z]{1,4}-[0-9]{1,5}", fullmatch=True))
    return match_doc(
        match_id=mid,
        fmt=fmt,
        year=draw(st.integers(1980, 2020)),
        ground=draw(st.sampled_from(["Lord's", "MCG", "Eden Gardens", "Newlands"])),
        outcome=draw(st.sampled_from(outcomes)),
        teams=[draw(team_docs("Alpha", "A", n_innings)), draw(team_docs("Beta", "B", n_innings))],
    )
