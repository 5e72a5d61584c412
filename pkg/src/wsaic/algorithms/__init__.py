from .archive import Archive
from .moments import MOMENT_TARGETS, MomentEstimates, sample_moments
from .params import FerpsoParams, LipsParams, WsaIcParams, WsaParams
from .pso import Ferpso, Lips, fer_neighbours
from .runner import ALGORITHMS, algorithm_classes, make_optimizer, run
from .whales import Wsa, WsaIc, check_counter, wsa_move

__all__ = [
    "ALGORITHMS",
    "Archive",
    "Ferpso",
    "FerpsoParams",
    "Lips",
    "LipsParams",
    "MOMENT_TARGETS",
    "MomentEstimates",
    "Wsa",
    "WsaIc",
    "WsaIcParams",
    "WsaParams",
    "algorithm_classes",
    "check_counter",
    "fer_neighbours",
    "make_optimizer",
    "run",
    "sample_moments",
    "wsa_move",
]
