"""Built-in example circuits: 1-to-4 decoder, 1-to-4 demultiplexer, 4x1 multiplexer."""

from .netlist import Netlist, parse_netlist

DECODER = """\
# quaternary 1-to-4 decoder: L<i> = 3 when S = i, else 0
circuit decoder
input S
const C0 = 0
const C1 = 1
const C2 = 2
const C3 = 3
gate E0 = EQ(S, C0)
gate E1 = EQ(S, C1)
gate E2 = EQ(S, C2)
gate E3 = EQ(S, C3)
output L0 = E0
output L1 = E1
output L2 = E2
output L3 = E3
"""

DEMUX = """\
# quaternary 1-to-4 demultiplexer: L<i> = D when S = i, else 0
circuit demux
input S
input D
const C0 = 0
const C1 = 1
const C2 = 2
const C3 = 3
gate E0 = EQ(S, C0)
gate E1 = EQ(S, C1)
gate E2 = EQ(S, C2)
gate E3 = EQ(S, C3)
gate G0 = AND(D, E0)
gate G1 = AND(D, E1)
gate G2 = AND(D, E2)
gate G3 = AND(D, E3)
output L0 = G0
output L1 = G1
output L2 = G2
output L3 = G3
"""

MUX4 = """\
# quaternary 4x1 multiplexer built on a 1-to-4 decoder: F = D<S>
circuit mux4
input S
input D0
input D1
input D2
input D3
const C0 = 0
const C1 = 1
const C2 = 2
const C3 = 3
gate E0 = EQ(S, C0)
gate E1 = EQ(S, C1)
gate E2 = EQ(S, C2)
gate E3 = EQ(S, C3)
gate M0 = AND(D0, E0)
gate M1 = AND(D1, E1)
gate M2 = AND(D2, E2)
gate M3 = AND(D3, E3)
gate P0 = OR(M0, M1)
gate P1 = OR(M2, M3)
gate Y = OR(P0, P1)
output F = Y
"""

EXAMPLES = {"decoder": DECODER, "demux": DEMUX, "mux4": MUX4}


def example(name: str) -> Netlist:
    try:
        source = EXAMPLES[name]
    except KeyError:
        raise KeyError(f"no example named {name!r}; choose from {', '.join(EXAMPLES)}") from None
    return parse_netlist(source)
