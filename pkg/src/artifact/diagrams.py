"""Oriented tangle and link diagrams in Morse presentation.

A diagram is a bottom-to-top list of slice events acting on a register of
strand positions (leftmost position = 1):

    cup p L|R     new pair of legs at positions p, p+1
    cap p L|R     join the legs at positions p, p+1
    cross p D     the strands at p, p+1 swap; D names the over diagonal

The cup/cap marker names the leg through which a traversal enters the
extremum: for a cup the leg running down into it, for a cap the leg running
up into it.  A crossing's strand from the lower-left to the upper-right is the
sw_ne diagonal, the other is se_nw.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

LEGS = ("left", "right")
DIAGONALS = ("sw_ne", "se_nw")

# extremum types, keyed by (event kind, leg entered)
#   cap entered on the left: clockwise maximum      u-
#   cup entered on the right: clockwise minimum     d-
#   cap entered on the right: counterclockwise max  d+
#   cup entered on the left: counterclockwise min   u+
EXTREMUM_TYPE = {
    ("cap", "left"): "u-",
    ("cup", "right"): "d-",
    ("cap", "right"): "d+",
    ("cup", "left"): "u+",
}
CLOCKWISE = ("u-", "d-")


class DiagramError(ValueError):
    """Syntax or wiring error, located by line/column or event index."""

    def __init__(self, message, line=None, column=None, event=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
            if column is not None:
                where.append(f"column {column}")
        if event is not None:
            where.append(f"event {event}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line, self.column, self.event = line, column, event


@dataclass(frozen=True)
class Cup:
    pos: int
    leg: str

    def __str__(self):
        return f"cup {self.pos} {self.leg}"


@dataclass(frozen=True)
class Cap:
    pos: int
    leg: str

    def __str__(self):
        return f"cap {self.pos} {self.leg}"


@dataclass(frozen=True)
class Cross:
    pos: int
    over: str

    def __str__(self):
        return f"cross {self.pos} {self.over}"


def _flip_leg(leg):
    return "right" if leg == "left" else "left"


def _flip_diag(d):
    return "se_nw" if d == "sw_ne" else "sw_ne"


@dataclass(frozen=True)
class Diagram:
    kind: str                       # "tangle" or "link"
    events: tuple
    boundary: str | None = None     # tangle strand direction: "up" or "down"
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        if self.kind not in ("tangle", "link"):
            raise DiagramError(f"unknown diagram kind {self.kind!r}")
        if self.kind == "tangle" and self.boundary not in ("up", "down"):
            raise DiagramError("a tangle needs boundary 'up' or 'down'")
        if self.kind == "link" and self.boundary is not None:
            raise DiagramError("a link has no boundary orientation")

    @property
    def crossings(self):
        return [i for i, e in enumerate(self.events) if isinstance(e, Cross)]

    def n_crossings(self):
        return len(self.crossings)

    def wiring(self) -> "Wiring":
        return _wire(self)

    def digest(self) -> str:
        return hashlib.sha256(render(self).encode()).hexdigest()[:12]

    def __str__(self):
        return render(self)


# text format -----------------------------------------------------------------

def render(D: Diagram) -> str:
    head = f"tangle {D.boundary}" if D.kind == "tangle" else "link"
    return "\n".join([head] + [str(e) for e in D.events]) + "\n"


def parse(text: str, name: str = "") -> Diagram:
    kind = boundary = None
    events = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks, cols = [], []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            toks.append(tok)
            cols.append(col + 1)
            col += len(tok)
        if not toks:
            continue
        if kind is None:
            if toks[0] == "link" and len(toks) == 1:
                kind = "link"
            elif toks[0] == "tangle" and len(toks) == 2 and toks[1] in ("up", "down"):
                kind, boundary = "tangle", toks[1]
            else:
                bad = 1 if toks[0] in ("link", "tangle") and len(toks) > 1 else 0
                raise DiagramError("expected header 'tangle up|down' or 'link'", lineno, cols[bad])
            continue
        word = toks[0]
        if word not in ("cup", "cap", "cross"):
            raise DiagramError(f"unknown event {word!r}", lineno, cols[0])
        if len(toks) != 3:
            raise DiagramError(f"'{word}' takes a position and a marker", lineno, cols[-1])
        try:
            pos = int(toks[1])
        except ValueError:
            raise DiagramError(f"bad position {toks[1]!r}", lineno, cols[1]) from None
        if pos < 1:
            raise DiagramError("positions start at 1", lineno, cols[1])
        marker = toks[2]
        allowed = DIAGONALS if word == "cross" else LEGS
        if marker not in allowed:
            raise DiagramError(f"marker must be one of {', '.join(allowed)}", lineno, cols[2])
        events.append({"cup": Cup, "cap": Cap, "cross": Cross}[word](pos, marker))
    if kind is None:
        raise DiagramError("empty diagram: missing header", 1, 1)
    D = Diagram(kind, events, boundary, name)
    _wire(D)
    return D


# wiring ----------------------------------------------------------------------

@dataclass
class Segment:
    """A piece of strand between two consecutive events in its column."""
    id: int
    lower: tuple      # ("bottom",) | ("cup", i, leg) | ("cross", i, "tl"|"tr")
    upper: tuple = None  # ("top",) | ("cap", i, leg) | ("cross", i, "bl"|"br")
    up: bool | None = None
    component: int | None = None


@dataclass
class Step:
    """One thing met while walking a component."""
    kind: str          # "line" or "extremum"
    event: int
    diag: str | None = None    # lines: which diagonal the strand runs along
    up: bool | None = None     # lines: strand direction
    etype: str | None = None   # extrema: u-, u+, d+, d-


class Wiring:
    def __init__(self, D, segments, slices, cross_segs, extremum_segs):
        self.diagram = D
        self.segments = segments
        self.slices = slices            # slices[i] = segment ids just below event i
        self.cross_segs = cross_segs    # event -> (bl, br, tl, tr)
        self.extremum_segs = extremum_segs  # event -> (left, right)
        self.components: list[list[int]] = []
        self.open_component: int | None = None

    def direction_at(self, slice_index: int, pos: int) -> bool:
        return self.segments[self.slices[slice_index][pos - 1]].up

    def walk_from(self, seg_id: int):
        """Steps met walking one full cycle from the start of a segment.

        For the open strand of a tangle the walk runs to the far end."""
        segs = self.segments
        steps, order = [], [seg_id]
        cur = seg_id
        while True:
            s = segs[cur]
            end = s.upper if s.up else s.lower
            if end[0] in ("top", "bottom"):
                break
            kind, i, slot = end
            if kind in ("cap", "cup"):
                steps.append(Step("extremum", i, etype=EXTREMUM_TYPE[(kind, slot)]))
                left, right = self.extremum_segs[i]
                nxt = right if slot == "left" else left
            else:
                bl, br, tl, tr = self.cross_segs[i]
                if slot == "bl":
                    steps.append(Step("line", i, "sw_ne", True))
                    nxt = tr
                elif slot == "br":
                    steps.append(Step("line", i, "se_nw", True))
                    nxt = tl
                elif slot == "tl":
                    steps.append(Step("line", i, "se_nw", False))
                    nxt = br
                else:
                    steps.append(Step("line", i, "sw_ne", False))
                    nxt = bl
            if nxt == seg_id:
                break
            order.append(nxt)
            cur = nxt
        return steps, order


def _wire(D: Diagram) -> Wiring:
    segments: list[Segment] = []

    def new(lower):
        segments.append(Segment(len(segments), lower))
        return len(segments) - 1

    reg = [new(("bottom",))] if D.kind == "tangle" else []
    slices, cross_segs, extremum_segs = [], {}, {}
    for i, ev in enumerate(D.events):
        slices.append(list(reg))
        w, p = len(reg), ev.pos
        if isinstance(ev, Cup):
            if p > w + 1:
                raise DiagramError(f"cup at position {p} but the register has width {w}", event=i)
            left, right = new(("cup", i, "left")), new(("cup", i, "right"))
            reg[p - 1:p - 1] = [left, right]
            extremum_segs[i] = (left, right)
        else:
            if p > w - 1:
                raise DiagramError(f"{'cap' if isinstance(ev, Cap) else 'cross'} at position {p} "
                                   f"needs two strands but the register has width {w}", event=i)
            a, b = reg[p - 1], reg[p]
            if isinstance(ev, Cap):
                segments[a].upper, segments[b].upper = ("cap", i, "left"), ("cap", i, "right")
                del reg[p - 1:p + 1]
                extremum_segs[i] = (a, b)
            else:
                segments[a].upper, segments[b].upper = ("cross", i, "bl"), ("cross", i, "br")
                tl, tr = new(("cross", i, "tl")), new(("cross", i, "tr"))
                reg[p - 1:p + 1] = [tl, tr]
                cross_segs[i] = (a, b, tl, tr)
    slices.append(list(reg))
    n = len(D.events)
    if D.kind == "tangle" and len(reg) != 1:
        raise DiagramError(f"a tangle must end with one open strand, found {len(reg)}", event=n)
    if D.kind == "link" and reg:
        raise DiagramError(f"a link must end with an empty register, found {len(reg)} strands", event=n)
    for s in reg:
        segments[s].upper = ("top",)

    W = Wiring(D, segments, slices, cross_segs, extremum_segs)
    _orient(W)
    return W


def _set_directions(W: Wiring, order, first_up):
    """Give directions along a walk order; crossings keep, extrema flip."""
    segs = W.segments
    up = first_up
    for k, sid in enumerate(order):
        segs[sid].up = up
        s = segs[sid]
        end = s.upper if up else s.lower
        if end[0] in ("cap", "cup"):
            up = not up


def _check_extrema(W: Wiring, steps):
    for st in steps:
        if st.kind != "extremum":
            continue
        ev = W.diagram.events[st.event]
        kind = "cap" if isinstance(ev, Cap) else "cup"
        if EXTREMUM_TYPE[(kind, ev.leg)] != st.etype:
            raise DiagramError(f"orientation clash: the strand does not enter this {kind} "
                               f"through its {ev.leg} leg", event=st.event)


def _orient(W: Wiring):
    segs = W.segments
    D = W.diagram
    comp = 0
    if D.kind == "tangle":
        start = 0 if D.boundary == "up" else W.slices[-1][0]
        segs[start].up = D.boundary == "up"
        # walk with provisional directions
        order = _trace_order(W, start, segs[start].up)
        _set_directions(W, order, segs[start].up)
        steps, _ = W.walk_from(start)
        _check_extrema(W, steps)
        for sid in order:
            segs[sid].component = comp
        W.components.append(order)
        W.open_component = comp
        comp += 1
    for sid in range(len(segs)):
        if segs[sid].component is not None:
            continue
        order = _trace_order(W, sid, True)
        _set_directions(W, order, True)
        steps, _ = W.walk_from(sid)
        first = next((st for st in steps if st.kind == "extremum"), None)
        ev = D.events[first.event]
        kind = "cap" if isinstance(ev, Cap) else "cup"
        if EXTREMUM_TYPE[(kind, ev.leg)] != first.etype:
            order = _trace_order(W, sid, False)
            _set_directions(W, order, False)
            steps, _ = W.walk_from(sid)
        _check_extrema(W, steps)
        for s in order:
            segs[s].component = comp
        W.components.append(order)
        comp += 1
    if D.kind == "tangle" and len(W.components) > 1:
        first = min(i for s in W.components[1] for i in _segment_events(segs[s]))
        raise DiagramError("a tangle diagram must consist of its single strand; "
                           "found a closed component", event=first)


def _segment_events(s: Segment):
    return [e[1] for e in (s.lower, s.upper) if e and len(e) > 1]


def _trace_order(W: Wiring, start: int, up: bool):
    """Segment ids along the curve from ``start`` in the given direction."""
    segs = W.segments
    order, cur = [start], start
    while True:
        s = segs[cur]
        end = s.upper if up else s.lower
        if end[0] in ("top", "bottom"):
            return order
        kind, i, slot = end
        if kind in ("cap", "cup"):
            left, right = W.extremum_segs[i]
            nxt = right if slot == "left" else left
            up = not up
        else:
            bl, br, tl, tr = W.cross_segs[i]
            nxt = {"bl": tr, "br": tl, "tl": br, "tr": bl}[slot]
        if nxt == start:
            return order
        order.append(nxt)
        cur = nxt


# traversal -------------------------------------------------------------------

_DIRECTION = {("sw_ne", True): (1, 1), ("sw_ne", False): (-1, -1),
              ("se_nw", True): (-1, 1), ("se_nw", False): (1, -1)}


@dataclass(frozen=True)
class Line:
    component: int
    label: int          # 1-based within the component
    event: int
    role: str           # "over" or "under"
    diag: str
    up: bool
    u_d: int
    u_u: int

    @property
    def rightward(self) -> bool:
        return _DIRECTION[(self.diag, self.up)][0] > 0


@dataclass(frozen=True)
class CrossingRecord:
    event: int
    over: tuple         # (component, label)
    under: tuple
    over_up: bool
    under_up: bool
    over_diag: str
    sign: int


@dataclass(frozen=True)
class ComponentTraversal:
    index: int
    start_segment: int
    closed: bool
    lines: tuple
    extrema: tuple      # (event, type) in traversal order
    census: dict

    @property
    def whitney(self) -> int:
        cw = sum(self.census[t] for t in CLOCKWISE)
        ccw = sum(self.census[t] for t in ("u+", "d+"))
        return (cw - ccw) // 2


@dataclass(frozen=True)
class Traversal:
    components: tuple
    crossings: tuple

    def line(self, component, label) -> Line:
        return self.components[component].lines[label - 1]


def crossing_sign(over_diag: str, over_up: bool, under_up: bool) -> int:
    """+1 when the over strand points to the right of a walker on the under strand."""
    ox, oy = _DIRECTION[(over_diag, over_up)]
    ux, uy = _DIRECTION[(_flip_diag(over_diag), under_up)]
    return 1 if ox * uy - oy * ux > 0 else -1


def _closing_cap(W: Wiring, comp: int) -> int:
    return max(s.upper[1] for s in (W.segments[i] for i in W.components[comp]) if s.upper[0] == "cap")


def canonical_starts(W: Wiring) -> list:
    """Start segment per component, components in order of their closing caps.

    A closed component starts on the leg leaving its last cap."""
    starts = []
    if W.open_component is not None:
        starts.append(W.components[W.open_component][0])
    closed = [c for c in range(len(W.components)) if c != W.open_component]
    closed.sort(key=lambda c: _closing_cap(W, c))
    for c in closed:
        left, right = W.extremum_segs[_closing_cap(W, c)]
        starts.append(left if not W.segments[left].up else right)
    return starts


def admissible_starts(D: Diagram) -> list:
    """For each component (canonical order), every segment a walk may start on."""
    W = _wire(D)
    out = []
    for s in canonical_starts(W):
        comp = W.segments[s].component
        out.append(list(W.components[comp]))
    return out


def traverse(D: Diagram, starts: list | None = None) -> Traversal:
    W = _wire(D)
    if starts is None:
        starts = canonical_starts(W)
    comps = []
    seen: dict = {}
    for ci, sid in enumerate(starts):
        closed = W.segments[sid].component != W.open_component
        steps, _ = W.walk_from(sid)
        raw_lines, extrema = [], []
        for st in steps:
            if st.kind == "line":
                raw_lines.append(st)
            else:
                extrema.append((st.event, st.etype))
        # suffix counts of extrema after each line
        lines = []
        ud = uu = 0
        suffix = []
        for st in reversed(steps):
            if st.kind == "extremum":
                ud += {"d+": 1, "d-": -1}.get(st.etype, 0)
                uu += {"u+": 1, "u-": -1}.get(st.etype, 0)
            else:
                suffix.append((ud, uu))
        suffix.reverse()
        for k, (st, (a, b)) in enumerate(zip(raw_lines, suffix), 1):
            ev = D.events[st.event]
            role = "over" if ev.over == st.diag else "under"
            lines.append(Line(ci, k, st.event, role, st.diag, st.up, a, b))
            seen.setdefault(st.event, {})[role] = (ci, k, st.up)
        census = {t: 0 for t in EXTREMUM_TYPE.values()}
        for _, t in extrema:
            census[t] += 1
        comps.append(ComponentTraversal(ci, sid, closed, tuple(lines), tuple(extrema), census))
    crossings = []
    for i in sorted(seen):
        o, u = seen[i]["over"], seen[i]["under"]
        over = D.events[i].over
        crossings.append(CrossingRecord(i, o[:2], u[:2], o[2], u[2], over, crossing_sign(over, o[2], u[2])))
    return Traversal(tuple(comps), tuple(crossings))


def writhe(D: Diagram) -> int:
    return sum(c.sign for c in traverse(D).crossings)


def whitney_degrees(D: Diagram) -> list:
    if D.kind != "link":
        raise DiagramError("Whitney degrees are defined for link diagrams; close the tangle first")
    return [c.whitney for c in traverse(D).components]


def n_components(D: Diagram) -> int:
    return len(_wire(D).components)


# operations ------------------------------------------------------------------

def star(T1: Diagram, T2: Diagram) -> Diagram:
    if T1.kind != "tangle" or T2.kind != "tangle":
        raise DiagramError("star multiplies tangle diagrams")
    if T1.boundary != T2.boundary:
        raise DiagramError("orientation mismatch: the top of the first tangle must match "
                           "the bottom of the second")
    return Diagram("tangle", T1.events + T2.events, T1.boundary)


def reverse(D: Diagram) -> Diagram:
    evs = []
    for e in D.events:
        if isinstance(e, Cup):
            evs.append(Cup(e.pos, _flip_leg(e.leg)))
        elif isinstance(e, Cap):
            evs.append(Cap(e.pos, _flip_leg(e.leg)))
        else:
            evs.append(e)
    boundary = None if D.boundary is None else ("down" if D.boundary == "up" else "up")
    return Diagram(D.kind, evs, boundary, D.name + "^op" if D.name else "")


def mirror(D: Diagram) -> Diagram:
    evs = [Cross(e.pos, _flip_diag(e.over)) if isinstance(e, Cross) else e for e in D.events]
    return Diagram(D.kind, evs, D.boundary, D.name + "-mirror" if D.name else "")


def closure(T: Diagram) -> Diagram:
    """Close a 1-1 tangle by a return strand on its right."""
    if T.kind != "tangle":
        raise DiagramError("only tangles can be closed")
    if T.boundary == "up":
        evs = (Cup(1, "right"),) + T.events + (Cap(1, "left"),)
    else:
        evs = (Cup(1, "left"),) + T.events + (Cap(1, "right"),)
    return Diagram("link", evs, None, T.name + "-closure" if T.name else "")


def all_upright(D: Diagram) -> bool:
    return all(c.over_up and c.under_up for c in traverse(D).crossings)


# regular-isotopy moves ----------------------------------------------------------

def _span(ev):
    """(width consumed, width produced)."""
    if isinstance(ev, Cup):
        return 0, 2
    if isinstance(ev, Cap):
        return 2, 0
    return 2, 2


def _moved(ev, pos):
    return type(ev)(pos, ev.leg if not isinstance(ev, Cross) else ev.over)


def commute_at(events, i):
    """Exchange the heights of events i and i+1 when they act on disjoint strands."""
    e, f = events[i], events[i + 1]
    e_in, e_out = _span(e)
    f_in, f_out = _span(f)
    p, r = e.pos, f.pos
    if r + f_in <= p:
        new = [_moved(f, r), _moved(e, p + f_out - f_in)]
    elif r >= p + e_out:
        new = [_moved(f, r - e_out + e_in), _moved(e, p)]
    else:
        return None
    return list(events[:i]) + new + list(events[i + 2:])


def _zigzag(up: bool, p: int, variant: int):
    if variant == 0:
        leg = "left" if up else "right"
        return [Cup(p + 1, leg), Cap(p, leg)]
    leg = "right" if up else "left"
    return [Cup(p, leg), Cap(p + 1, leg)]


def _is_zigzag(e, f):
    return (isinstance(e, Cup) and isinstance(f, Cap)
            and (e.pos == f.pos + 1 or f.pos == e.pos + 1))


def _is_bigon(e, f):
    return isinstance(e, Cross) and isinstance(f, Cross) and e.pos == f.pos and e.over != f.over


def _triangle(events, i):
    if i + 2 >= len(events):
        return None
    a, b, c = events[i:i + 3]
    if not all(isinstance(x, Cross) for x in (a, b, c)):
        return None
    if not (a.pos == c.pos and abs(a.pos - b.pos) == 1):
        return None
    if a.over == c.over != b.over:
        return None  # cyclic over relation
    return [Cross(b.pos, c.over), Cross(a.pos, b.over), Cross(b.pos, a.over)]


def _slide(events, i):
    """Move an extremum across the adjacent crossing."""
    e, f = events[i], events[i + 1]
    if isinstance(e, Cross) and isinstance(f, Cap):
        if f.pos == e.pos + 1:
            return [Cross(e.pos + 1, _flip_diag(e.over)), Cap(e.pos, f.leg)]
        if f.pos == e.pos - 1:
            return [Cross(e.pos - 1, _flip_diag(e.over)), Cap(e.pos, f.leg)]
    if isinstance(e, Cup) and isinstance(f, Cross):
        if f.pos == e.pos - 1:
            return [Cup(e.pos - 1, e.leg), Cross(e.pos, _flip_diag(f.over))]
        if f.pos == e.pos + 1:
            return [Cup(e.pos + 1, e.leg), Cross(e.pos, _flip_diag(f.over))]
    return None


def _untwist(events, i):
    if i + 2 >= len(events):
        return None
    a, b, c = events[i:i + 3]
    if not (isinstance(a, Cup) and isinstance(b, Cross) and isinstance(c, Cap)):
        return None
    if a.pos == c.pos + 2 and b.pos == c.pos + 1:
        return [Cross(c.pos, _flip_diag(b.over))]
    if c.pos == a.pos + 2 and b.pos == a.pos + 1:
        return [Cross(a.pos, _flip_diag(b.over))]
    return None


def _twist(W: Wiring, i: int, variant: int):
    ev = W.diagram.events[i]
    p = ev.pos
    if variant == 0:
        leg = "left" if W.direction_at(i, p) else "right"
        return [Cup(p + 2, leg), Cross(p + 1, _flip_diag(ev.over)), Cap(p, leg)]
    leg = "right" if W.direction_at(i, p + 1) else "left"
    return [Cup(p, leg), Cross(p + 1, _flip_diag(ev.over)), Cap(p + 2, leg)]


MOVES = ("commute", "m1_insert", "m1_remove", "m2_insert", "m2_remove",
         "m3", "slide", "twist", "untwist")


def apply_move(D: Diagram, move: str, rng: random.Random):
    """Try one move at a random site; returns the new event list or None."""
    evs = list(D.events)
    n = len(evs)
    if move == "commute":
        sites = [i for i in range(n - 1) if commute_at(evs, i) is not None]
        if not sites:
            return None
        return commute_at(evs, rng.choice(sites))
    if move in ("m1_insert", "m2_insert", "twist"):
        W = _wire(D)
        if move == "twist":
            sites = [i for i in range(n) if isinstance(evs[i], Cross)]
            if not sites:
                return None
            i = rng.choice(sites)
            return evs[:i] + _twist(W, i, rng.randrange(2)) + evs[i + 1:]
        i = rng.randrange(n + 1)
        width = len(W.slices[i])
        if move == "m1_insert":
            if width == 0:
                return None
            p = rng.randrange(1, width + 1)
            return evs[:i] + _zigzag(W.direction_at(i, p), p, rng.randrange(2)) + evs[i:]
        if width < 2:
            return None
        p = rng.randrange(1, width)
        m = rng.choice(DIAGONALS)
        return evs[:i] + [Cross(p, m), Cross(p, _flip_diag(m))] + evs[i:]
    if move in ("m1_remove", "m2_remove"):
        test = _is_zigzag if move == "m1_remove" else _is_bigon
        sites = [i for i in range(n - 1) if test(evs[i], evs[i + 1])]
        if not sites:
            return None
        i = rng.choice(sites)
        return evs[:i] + evs[i + 2:]
    fn, width = {"m3": (_triangle, 3), "slide": (_slide, 2), "untwist": (_untwist, 3)}[move]
    sites = [(i, r) for i in range(n - width + 1) if (r := fn(evs, i)) is not None]
    if not sites:
        return None
    i, r = rng.choice(sites)
    return evs[:i] + r + evs[i + width:]


def perturb(D: Diagram, seed: int, n_moves: int, moves=MOVES, max_extra_crossings: int = 4,
            max_extra_events: int = 14, retries: int = 60, log: list | None = None) -> Diagram:
    """Apply ``n_moves`` random regular-isotopy moves, reproducibly from ``seed``.

    Names of the moves actually applied are appended to ``log`` if given.
    """
    rng = random.Random(seed)
    cur = D
    cap_cross = D.n_crossings() + max_extra_crossings
    cap_events = len(D.events) + max_extra_events
    growing = {"m1_insert", "m2_insert", "twist"}
    for _ in range(n_moves):
        for _ in range(retries):
            move = rng.choice(moves)
            if move in growing and (len(cur.events) + 3 > cap_events or
                                    cur.n_crossings() + 2 > cap_cross):
                continue
            evs = apply_move(cur, move, rng)
            if evs is None:
                continue
            cand = Diagram(cur.kind, evs, cur.boundary, D.name)
            _wire(cand)  # every move keeps the wiring valid
            cur = cand
            if log is not None:
                log.append(move)
            break
        else:
            break
    return cur


# builtins --------------------------------------------------------------------

_BUILTIN_TEXT = {
    "strand": "tangle up\n",
    "circle": "link\ncup 1 right\ncap 1 left\n",
    "curl": "tangle up\ncup 2 right\ncross 1 sw_ne\ncap 2 left\n",
    "trefoil-tangle": """tangle up
cup 1 right
cup 3 left
cross 2 sw_ne
cross 4 sw_ne
cross 3 se_nw
cap 2 right
cap 2 right
""",
    "figure-eight-tangle": """tangle up
cup 2 right
cup 3 right
cross 1 sw_ne
cross 2 se_nw
cross 1 sw_ne
cross 2 se_nw
cap 3 left
cap 2 left
""",
    "hopf": """link
cup 1 left
cup 3 right
cross 2 sw_ne
cross 2 sw_ne
cap 1 right
cap 1 left
""",
    "borromean": """link
cup 1 left
cup 3 right
cross 2 se_nw
cup 3 right
cross 2 se_nw
cross 4 se_nw
cross 3 sw_ne
cross 2 se_nw
cross 4 se_nw
cap 1 right
cap 1 left
cap 1 left
""",
}


def builtins() -> dict:
    out = {name: parse(text, name) for name, text in _BUILTIN_TEXT.items()}
    out["curl-op"] = Diagram("tangle", reverse(out["curl"]).events, "down", "curl-op")
    out["two-curl"] = Diagram("tangle", star(out["curl"], out["curl"]).events, "up", "two-curl")
    for base in ("trefoil", "figure-eight"):
        T = closure(out[base + "-tangle"])
        out[base] = Diagram("link", T.events, None, base)
    out["unlink"] = parse("link\ncup 1 right\ncap 1 left\ncup 1 left\ncap 1 right\n", "unlink")
    return out


def builtin(name: str) -> Diagram:
    table = builtins()
    if name not in table:
        raise KeyError(f"no builtin diagram {name!r}; known: {', '.join(sorted(table))}")
    return table[name]
