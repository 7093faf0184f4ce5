"""Generalized expected utility over abstract expectation domains.

The package evaluates expected utility in algebras other than the reals,
builds representations of arbitrary preference relations, and model-checks
the classical postulates and their algebraic counterparts on finite
decision problems.
"""

from .algebra import (ExpectationDomain, PlausibilityOrder, Relation, check_distributivity,
                      canonical_domain, fold_sum, has_oplus_identity, is_monotonic, pair_domain,
                      pair_min_domain, standard_domain, table_domain, tagged_domain, validate_domain)
from .decision import (DecisionProblem, DecisionSituation, enumerate_simple_acts, ev_set, geu,
                       geu_restricted, geu_statewise, induced_preference, is_additive, is_whole,
                       preference, splice, ulotto)
from .errors import (BudgetExceeded, DuplicateActError, GEUError, ParseError, PreconditionError,
                     SpecialVersionMismatch, TableError, ValidationError)
from .measures import (PlausibilityMeasure, ProbabilityWeights, identity_measure, pair_measure,
                       probability_measure, table_measure, validate_measure)
from .results import CheckResult, ValidationReport
from .savage import (check_A, check_P, conditional_preference, is_null, likelihood_relation,
                     pi_membership, verify_representation)
from .synthesis import (SynthesizedProblem, canonical_representation, fixed_domain,
                        fixed_representation, minimality_check, monotonic_representation, utility_for)
from .values import Pair, Tagged, TaggedConsequence, pair, rational, render

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
