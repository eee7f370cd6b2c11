"""The eleven simple germs and their tabulated degeneracy values."""
from __future__ import annotations

from .parser import parse_germ

# label -> germ text
GERMS = {
    "A1": "x*y",
    "A2": "y^2 - x^3",
    "A3": "y^2 - x^4",
    "A4": "y^2 - x^5",
    "A5": "y^2 - x^6",
    "D4": "y^3 - x^2*y",
    "D5": "y^4 - x^2*y",
    "D6": "y^5 - x^2*y",
    "E6": "y^3 - x^4",
    "E7": "x*y^3 - x^3",
    "E8": "y^3 - x^5",
}

# (order m, kind) for each value column after the Milnor number
COLUMNS = ((3, "w2a"), (4, "w2a"), (2, "w2b"), (3, "w2b"), (2, "w1"), (3, "w1"))

# label -> (mu, then one value per entry of COLUMNS)
TABLE1 = {
    "A1": (1, 1, 5, 1, 5, 2, 6),
    "A2": (2, 2, 10, 2, 10, 3, 8),
    "A3": (3, 3, 18, 3, 15, 4, 12),
    "A4": (4, 4, 24, 4, 20, 5, 15),
    "A5": (5, 5, 30, 5, 25, 6, 18),
    "D4": (4, 6, 29, 4, 24, 6, 18),
    "D5": (5, 7, 36, 5, 29, 7, 20),
    "D6": (6, 8, 45, 6, 34, 8, 24),
    "E6": (6, 9, 44, 6, 36, 8, 22),
    "E7": (7, 10, 53, 7, 41, 9, 26),
    "E8": (8, 12, 62, 8, 48, 10, 29),
}


def corpus():
    """[(label, GermSpec)] in table order."""
    return [(k, parse_germ(v)) for k, v in GERMS.items()]
