"""Rate-region toolkit for the two-transmitter/two-receiver network
with general message sets, plus a desk-scale random-coding simulator."""

from .channel import (Alphabet, ChannelSpec, OrthogonalChannelSpec,
                      compose_orthogonal, load_channel, marginal,
                      validate_channel)
from .errors import IngmsError
from .fme import LinIneq, LinSys, eliminate, eliminate_all, implies, is_feasible
from .pmf import (Factorization, JointPMF, build_joint, entropy, marginalize,
                  mutual_information)
from .region import (BinRates, RatePoint, decoding_bounds,
                     decoding_bounds_general, enlarge, hk_region,
                     ingms_membership, ingms_project, ingms_system,
                     mac_common_region, marton_region, orthogonal_capacity,
                     theta_terms)

__all__ = [
    "Alphabet", "ChannelSpec", "OrthogonalChannelSpec", "compose_orthogonal",
    "load_channel", "marginal", "validate_channel", "IngmsError",
    "LinIneq", "LinSys", "eliminate", "eliminate_all", "implies", "is_feasible",
    "Factorization", "JointPMF", "build_joint", "entropy", "marginalize",
    "mutual_information", "BinRates", "RatePoint", "decoding_bounds",
    "decoding_bounds_general", "enlarge", "hk_region", "ingms_membership",
    "ingms_project", "ingms_system", "mac_common_region", "marton_region",
    "orthogonal_capacity", "theta_terms",
]
