"""Exact-arithmetic toolkit for Picard-Fuchs equations of elliptic families:
holonomic recurrences, integrality and congruence analysis, dominant-root
asymptotics, and a pruned search over integral ODE candidates."""

__version__ = "0.1.0"

from .poly import Poly
from .ratfunc import RationalFunction, nu_delta
from .series import TruncatedSeries, expand_ratfunc
from .parsing import ParseError, parse_polynomial, parse_rational
from .curves import (InvariantSet, SingularFamilyError, WeierstrassFamily,
                     check_delta_vanishes_at_zero, compute_invariants,
                     family_from_strings, parse_family_file, reduce_mod_t)
from .picard_fuchs import (HolonomicRecurrence, RecurrenceShapeError,
                           SecondOrderODE, derive_ode, expand_solution,
                           hypergeometric_oracle, ode_to_recurrence)
from .integrality import (IntegralityCertificate, ReductionError, analyze_level,
                          empirical_level, even_part_ode, fourth_power_test,
                          genint_bound, sharperub_reduce, strongint_bound,
                          syntactic_checks)
