"""
Wavepacket check of the closed-form flows
=========================================

A Gaussian packet is propagated through a 1200-site chain and the scattered
probability is split by channel and side of the atom.
"""
# %%
from photon_converter import AtomConfig, CRWConfig, LinearConfig, scatter_crw_at, scatter_linear
from photon_converter import wavevector_for_frequency
from photon_converter.oracle import WavepacketSpec, build_lattice, measure_flows, propagate

cfg = CRWConfig()
atom = AtomConfig.resonant(0.9, 0.1)
model = build_lattice(atom, cfg, 1200)

for w in (0.9, 1.0, 1.1, 1.2, 1.3):
    spec = WavepacketSpec(k0=wavevector_for_frequency(w, cfg), sigma_x=40.0)
    p = measure_flows(model, propagate(model, spec), spec)
    a = scatter_crw_at(w, atom, cfg)
    print(f"{w}: packet ({p.p_reflect:.4f}, {p.p_transmit:.4f}, {p.p_transfer:.4f})"
          f"  closed form ({a.flow_r:.4f}, {a.flow_t:.4f}, {a.flow_tr:.4f})")

# %%
# In an optical waveguide a resonant drive always reaches a transfer of 0.5.
for eta in (0.05, 0.2, 0.5):
    a = AtomConfig.resonant(0.9, eta)
    print(eta, scatter_linear(0.9 + eta, a, LinearConfig()).flow_tr)
