from .analysis import ModuleAnalysis
from .properties import (
    check_abelian,
    check_baer,
    check_C2,
    check_D2,
    check_dual_pi_rickart,
    check_duo,
    check_fitting,
    check_gen_K_nonsingular,
    check_indecomposable,
    check_mono_or_nilpotent,
    check_one_epiretractable,
    check_pi_rickart,
    check_reduced,
    check_regular_module,
    check_rickart,
    check_strongly_hopfian,
    fitting_index,
    pi_rickart_certificate,
    torsion_set,
)
from .report import MODULE_CHECKS, RING_CHECKS, ClassificationReport, classify
from .rings import FiniteRing, ring_battery
from .verdict import INAPPLICABLE, NO_COUNTEREXAMPLE, PROVEN, REFUTED, Verdict
from .dossier import witness_dossier
