"""
Bound states and complete reflection
====================================

Outside both continua the atom binds a photon. Below the positive band the
closed channel shifts the atomic level and produces a sharp reflection peak.
"""
# %%
from photon_converter import AtomConfig, CRWConfig, bound_state_energies, closed_channel_resonance, scatter_crw_at
from photon_converter.oracle import build_lattice, oracle_bound_states

cfg = CRWConfig()
atom = AtomConfig.resonant(0.9, 0.1)

energies = bound_state_energies(atom, cfg)
print("bound states:", energies)

# %%
# A 600-site chain diagonalised directly finds the same levels.
print("lattice:     ", oracle_bound_states(build_lattice(atom, cfg, 600)))

# %%
w = closed_channel_resonance(atom, cfg)
print(f"complete reflection at omega_k = {w:.10f}: flow_r = {scatter_crw_at(w, atom, cfg).flow_r:.12f}")
