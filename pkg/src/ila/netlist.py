"""Text netlists: one device per line, ``KIND name node+ node- [value]``.

KIND is one of R, C, L (value required), E, J (independent voltage and
current sources) and YV, YI (voltage and current sensors). ``#`` starts a
comment. Values are exact: integers, ``p/q`` or decimals.
"""
from __future__ import annotations

import re

from .emulator import DEVICE_KINDS, Network
from .errors import DuplicateDevice, ParseError
from .field import QQ, parse_rational
from .netgraph import DirectedGraph

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_VALUED = ("R", "C", "L")

RC_EXAMPLE = """\
# three unit capacitors in a loop, a unit resistor, one voltage source,
# one current source, a current sensor and a voltage sensor
C C1 1 0 1
C C2 0 2 1
C C3 2 1 1
R R1 3 1 1
E E6 3 4
YI Y6 4 0
J J5 0 1
YV Y5 0 1
"""


def _col(raw, tok, start=0):
    return raw.find(tok, start) + 1


def parse_netlist(text):
    edges, kinds, values = [], {}, {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = line.split()
        if not toks:
            continue
        kind = toks[0].upper()
        if kind not in DEVICE_KINDS:
            raise ParseError(f"unknown device kind {toks[0]!r}", n, _col(raw, toks[0]))
        want = 5 if kind in _VALUED else 4
        if len(toks) != want:
            col = _col(raw, toks[-1]) if len(toks) > want else len(raw.rstrip()) + 1
            raise ParseError(f"{kind} expects {want - 1} fields after the kind", n, col)
        name, tail, head = toks[1:4]
        if not _NAME.match(name):
            raise ParseError(f"bad device name {name!r}", n, _col(raw, name))
        if name in kinds:
            raise DuplicateDevice(f"line {n}: device {name} defined twice")
        if kind in _VALUED:
            tok = toks[4]
            try:
                val = parse_rational(tok)
            except ValueError:
                raise ParseError(f"bad value {tok!r}", n, _col(raw, tok, _col(raw, head))) from None
            if val <= 0:
                raise ParseError(f"value must be positive, got {tok}", n, _col(raw, tok, _col(raw, head)))
            values[name] = val
        edges.append((name, tail, head))
        kinds[name] = kind
    return Network(DirectedGraph(edges), kinds, values)


def serialize(net):
    """Canonical text: devices in label order, values as p/q."""
    out = []
    for lab, t, h in net.graph.edge_list():
        kind = net.kinds[lab]
        line = f"{kind} {lab} {t} {h}"
        if kind in _VALUED:
            line += " " + QQ.fmt(QQ(net.values[lab]))
        out.append(line)
    return "".join(x + "\n" for x in out)
