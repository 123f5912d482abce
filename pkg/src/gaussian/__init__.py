"""
Gaussian continuous-variable isotropic states: closed forms, criteria, measures,
the isomorphic channel and truncated-Fock oracles
"""
