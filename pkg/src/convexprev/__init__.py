"""Convex imprecise previsions on finite possibility spaces.

Consistency checks (sure loss, convexity, centered convexity, coherence),
natural and convex natural extension by exact linear programming,
canonical corrections, envelope representations, possibility measures and
convex risk measures.
"""

from .core import (LOWER, UPPER, Assessment, Gamble, PrecisePrevision, Space,
                   SpaceMismatchError, conjugate, gamble_inf_sup, precise_eval,
                   to_rational)
from .consistency import (ConsistencyReport, PreconditionError,
                          check_avoids_sure_loss, check_centered_convexity,
                          check_coherence, check_convexity, check_k_bar,
                          check_relaxed_centered, classify)
from .correction import CorrectionResult, correct
from .envelope import (DualFeasiblePoint, EnvelopeSpec, envelope_eval,
                       pool_experts, recover_envelope)
from .extension import (INFINITY, ExtensionResult, convex_natural_extension,
                        ec_at_zero, natural_extension)
from .models import (PossibilityAssignment, possibility_envelope,
                     possibility_measure)
from .risk import (RiskAssessment, check_axioms_T1_M2_CI, check_convex_risk,
                   check_liquidity_inequality, risk_extension)

__version__ = "0.1.0"
