#!/usr/bin/env python3
"""
Golden cases for the solvers and the oracle
Worked examples with their known answers, one dict per case
"""

SOLVE_1D_CASES = [
    {
        "id": 1,
        "name": "31-point table, C=7 from 13",
        "objective": "example5",
        "C": 7,
        "start": 13,
        "argmin": 17,
        "min_value": 4,
        "visited": list(range(1, 28)),
        "stop_right": "threshold",
        "left_phase": "exhausted",
    },
    {
        "id": 2,
        "name": "31-point table, C=8 scans everything",
        "objective": "example5",
        "C": 8,
        "start": 13,
        "argmin": 17,
        "min_value": 4,
        "visited": list(range(1, 32)),
        "stop_right": "exhausted",
        "left_phase": "exhausted",
    },
    {
        "id": 3,
        "name": "quartic, C=4 from the midpoint",
        "objective": "example3",
        "C": 4,
        "start": None,
        "argmin": 3,
        "min_value": -3.75,
        "visited": None,
        "stop_right": None,
        "left_phase": None,
    },
]

CERTIFICATE_CASES = [
    {"id": 1, "name": "quartic on [-20,20]", "objective": "example3", "minimal_C": 4},
    {"id": 2, "name": "31-point table", "objective": "example5", "minimal_C": 7},
]

EXAMPLE2_CASES = [
    {"name": "A1", "ameso": True, "witness": None},
    {"name": "A2", "ameso": True, "witness": None},
    {"name": "A3", "ameso": True, "witness": None},
    {"name": "A4", "ameso": False, "witness": ((3, 1), (12, 4))},
    {"name": "A5", "ameso": False, "witness": ((8, 1), (2, 4))},
]

# exponential surface on [1,100]^2 with C=1, top-level sweep on x2 from 80
SURFACE_CASE = {
    "C": 1,
    "start": 80,
    "argmin": (97, 97),
    "min_value": 190.0093,
    "conditional": {80: 190.4220, 97: 190.0093, 66: 191.1640},
    "top_visited": (66, 100),
    "tolerance": 5e-3,
}

KNAPSACK_CASES = [
    {
        "id": 1,
        "W": 100, "w": (3, 5, 7), "c": (4, 6, 8),
        "box": [(0, 16), (0, 10)],
        "cost_at_origin": 120,
        # floor/ceil midpoints (0,0), (1,1) cost 120 + 122 against 116 + 118
        "known_violation": ((1, 0), (0, 1)),
        # 2 * f(0,3) = 244 against f(0,0) + f(0,6) = 236
        "first_violation": ((0, 0), (0, 6)),
    },
    {
        "id": 2,
        "W": 14, "w": (2, 3, 7), "c": (3, 4, 5),
        "box": [(0, 3), (0, 2)],
        "cost_at_origin": 10,
        # 2 * f(1,1) = 34 against 14 + 15, a deficiency of exactly c3
        "known_violation": ((0, 1), (2, 1)),
        # f(0,1) + f(1,1) = 31 against f(0,0) + f(1,2) = 26
        "first_violation": ((0, 0), (1, 2)),
    },
]
