"""
Default caps and knobs

All functions taking one of these values as a keyword argument fall back to
the entry of `DEFAULTS`. The command line overrides some of them through
`RunConfig`.
"""

from fractions import Fraction


DEFAULTS = {"cap:stage_intervals": 2**20,
            # maximal number of stages followed by the endpoint descent
            "cap:endpoint_stages": 4096,
            "cap:ternary_orbit": 10**6,
            "cap:folding_iterations": 6,
            "cap:simplex_denominator": 20000,
            "cap:survivor_nodes": 200000,
            "cap:cover_nodes": 10**6,
            "cap:search_endpoints": 2**11,
            "cap:pair_nodes": 50000,
            # stages followed past the proof stage by membership checks
            "meps:membership_depth": 64,
            "bob:backtrack_budget": 8,
            "bob:backtrack_total": 256,
            "log:bits": 64,
            "budget:refine_bits": (64, 160, 400),
            "bound:K1": Fraction(1),
            "bound:K2": None,
            # proof-internal epsilon of the dimension bound
            "bound:eps": Fraction(1, 10),
            "sumset:grid": 21,
            "f19:min_prefix": 10,
            "f19:prefix_depth": 40,
            "print:digits": 6
            }
