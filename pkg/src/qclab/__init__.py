"""Quantum cluster characters of valued quivers over finite fields."""

__version__ = "0.1.0"

from .quiver import ValuedQuiver, build_valued_quiver, principal_pair  # noqa: E402
from .rep import Rep, RepCategory, category_for_q  # noqa: E402

__all__ = [
    "Rep",
    "RepCategory",
    "ValuedQuiver",
    "__version__",
    "build_valued_quiver",
    "category_for_q",
    "principal_pair",
]
