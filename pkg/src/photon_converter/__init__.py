"""Single-photon frequency conversion by a driven V-type atom in a 1D waveguide."""
from .crw import (
    BandConfiguration,
    BandStructure,
    Branch,
    CRWConfig,
    PartnerWavevector,
    ScatteringResult,
    band_structure,
    bound_state_energies,
    closed_channel_resonance,
    dispersion,
    partner_wavevector,
    scatter_crw,
    scatter_crw_at,
    wavevector_for_frequency,
)
from .dressed import AtomConfig, Channel, DressedPair, channel_splitting, dressed_pair
from .linear import LinearConfig, partner_wavevector_linear, peak_transfer, scatter_linear

__version__ = "0.1.0"
