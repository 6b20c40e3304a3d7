"""benchlock: lock combinational bench netlists and break them again.

Subpackages cover netlist handling, locking scheme generation, CNF/QBF
encoding, SAT/2QBF solving (compiled kernel with a pure-Python fallback),
the attack pipeline, and oracle access.
"""

__version__ = "0.1.0"
