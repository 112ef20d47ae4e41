"""Analysis of 1-block factor codes between shifts of finite type.

A code is given as an edge-labelled directed graph (a :class:`Presentation`);
the edge shift is the domain and the labels define the code.
"""

__version__ = "0.1.0"

from .bridges import (TangledPartition, WordFibre, bridge_exists, depth, is_tangled,
                      routing_set, t_depth, two_way_bridge_exists)
from .class_closing import (ClosingVerdict, check_class_closing, closing_delay_by_enumeration,
                            verify_condition4, verify_condition5)
from .class_degree import (ClassDegreeResult, class_count_bounds, class_degree, equivalent,
                           right_transition, transition)
from .ctc import (CtcVerdict, MultiplicityShell, check_constant_class_to_one, check_continuing,
                  image_is_sft, implication_suite, multiplicity_shell)
from .errors import (BudgetExceeded, FactorCodeError, InfeasibleSpec, InstanceTooLarge,
                     PresentationError, WordError)
from .points import Lasso, parse_lasso
from .presentation import (Presentation, count_preimages, degree_finite_to_one, export_dot,
                           format_presentation, image_words, is_finite_to_one, is_left_resolving,
                           is_right_resolving, load_presentation, parse_presentation,
                           preimage_words)
from .randomgen import RandomSpec, random_presentation
from .subset_sink import SubsetCover, aft_witness, subset_construction, verify_left_closing_delay

__all__ = [
    "__version__",
    "aft_witness",
    "bridge_exists",
    "BudgetExceeded",
    "check_class_closing",
    "check_constant_class_to_one",
    "check_continuing",
    "class_count_bounds",
    "class_degree",
    "ClassDegreeResult",
    "closing_delay_by_enumeration",
    "ClosingVerdict",
    "count_preimages",
    "CtcVerdict",
    "degree_finite_to_one",
    "depth",
    "equivalent",
    "export_dot",
    "FactorCodeError",
    "format_presentation",
    "image_is_sft",
    "image_words",
    "implication_suite",
    "InfeasibleSpec",
    "InstanceTooLarge",
    "is_finite_to_one",
    "is_left_resolving",
    "is_right_resolving",
    "is_tangled",
    "Lasso",
    "load_presentation",
    "multiplicity_shell",
    "MultiplicityShell",
    "parse_lasso",
    "parse_presentation",
    "preimage_words",
    "Presentation",
    "PresentationError",
    "random_presentation",
    "RandomSpec",
    "right_transition",
    "routing_set",
    "subset_construction",
    "SubsetCover",
    "t_depth",
    "TangledPartition",
    "transition",
    "two_way_bridge_exists",
    "verify_condition4",
    "verify_condition5",
    "verify_left_closing_delay",
    "WordError",
    "WordFibre",
]
