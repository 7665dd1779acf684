"""Franck-Condon factors of displaced harmonic wells, computed analytically,
by truncated Fock-space projection, and through emulated NMR readout
(diagonal tomography and the ancilla-assisted Moussa protocol)."""

from fcfsim._backend import BACKEND
from fcfsim.analytic import fcf_closed_form, fcf_oracle, four_level_norm
from fcfsim.translation import TranslationPlan, discrete_translation, translation_unitary

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "TranslationPlan",
    "discrete_translation",
    "fcf_closed_form",
    "fcf_oracle",
    "four_level_norm",
    "translation_unitary",
]
