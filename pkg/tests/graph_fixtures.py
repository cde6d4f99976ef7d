"""Shared hand-built edge lists for retrieval and acceptance tests.

All semantic weights sit strictly inside (0, 1) and carry at most six
decimals, so they survive the network's round-trip quantization and
every arc cost stays strictly positive under the default alphas.
"""

# Hub with five leaves; raw weights span the whole range so the global
# normalization hits both 0.0 and 1.0.
STAR_EDGES = [
    ("Hub", "A", 9, 0.9),
    ("Hub", "B", 5, 0.5),
    ("Hub", "C", 1, 0.1),
    ("Hub", "D", 7, 0.95),
    ("Hub", "E", 2, 0.35),
]

# Ten nodes, fourteen edges, plenty of cycles, no degree-one nodes.
WEB_EDGES = [
    ("N0", "N1", 3, 0.62),
    ("N0", "N2", 7, 0.18),
    ("N1", "N2", 2, 0.944751),
    ("N1", "N3", 9, 0.35),
    ("N2", "N4", 4, 0.501),
    ("N3", "N4", 1, 0.77),
    ("N3", "N5", 5, 0.266),
    ("N4", "N6", 6, 0.83),
    ("N5", "N6", 2, 0.405),
    ("N5", "N7", 8, 0.129),
    ("N7", "N8", 4, 0.553),
    ("N7", "N9", 2, 0.9),
    ("N6", "N8", 3, 0.71),
    ("N8", "N9", 5, 0.07),
]

# Two 2-hop routes S->T; with alpha 0 their strengths are exactly
# {0.9, 0.9} and {0.4, 1.0}.  The Z leaf pins w_min at 1.
DIAMOND_EDGES = [
    ("S", "X", 10, 0.5),
    ("X", "T", 10, 0.5),
    ("S", "Y", 5, 0.5),
    ("Y", "T", 11, 0.5),
    ("T", "Z", 1, 0.5),
]

# One hub with a big raw strength sum but weak semantics, next to a
# chain of low-degree nodes that are semantically close to the probe.
HUB_EDGES = [
    ("Probe", "Hub", 5, 0.10),
    ("Hub", "Sat1", 9, 0.10),
    ("Hub", "Sat2", 9, 0.10),
    ("Hub", "Sat3", 9, 0.10),
    ("Hub", "Sat4", 8, 0.10),
    ("Probe", "Fine1", 2, 0.95),
    ("Fine1", "Fine2", 2, 0.93),
    ("Fine2", "Fine3", 2, 0.94),
]

ALL_SMALL_GRAPHS = {
    "star": STAR_EDGES,
    "web": WEB_EDGES,
    "diamond": DIAMOND_EDGES,
    "hub": HUB_EDGES,
}
