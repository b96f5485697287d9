"""Binary-tree automaton groups: words, wreath recursion, nuclei and parity maps."""

from .automaton import AutomatonSpec, SpecError, join_specs, moore_dot
from .nucleus import (Directed, Finitary, NonContractingError, OtherBounded, Unbounded,
                      classify_state, distinct_count, is_section_closed, nucleus_closure,
                      same_elements)
from .parity import (EventuallyPeriodicBits, is_level_transitive_element, state_tau_table,
                     tau)
from .recursion import (Finite, Infinite, Unknown, WreathPair, act, equal, fixes_level,
                        infinite_order_certificate,
                        is_trivial, level_permutation, orbit_on_level, order_probe,
                        power_is_trivial, restrict, vertex, wreath_decompose)
from .words import (IDENTITY, Symbol, Word, commutator, conjugate, exponent_sums, free_reduce,
                    gen, inverse, multiply, power, substitute)
