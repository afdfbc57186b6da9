"""Search-based generation of waypoint perturbations that destabilize
waypoint-following vessel navigation, with the full evaluation pipeline
(hypervolume, statistical comparison, path classification)."""

from wpgen._core import *  # noqa: F401,F403
from wpgen._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
