"""Crystals of classical types and the embedding of B(infinity)."""
from .core import (
    LIE_TYPES,
    NEG_INF,
    U_INF,
    AxiomAudit,
    CartanData,
    CrystalError,
    ElementaryFactor,
    ExtInt,
    HeadSelectedError,
    RootVector,
    axiom_audit,
    tensor_apply,
    tensor_stats,
)
from .tableaux import (
    DominantWeight,
    Tableau,
    crystal_graph,
    enumerate_crystal,
    enumerate_semistandard_oracle,
    highest_weight_tableau,
    row_stats,
    tableau_apply,
    tableau_stats,
)
from .binfinity import (
    F_of_T,
    PsiElement,
    choose_large_lambda,
    closed_form_stats,
    image_bfs,
    image_member,
    image_surjectivity_probe,
    pi_lambda,
    psi_embed,
    psi_sequence,
    verify_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "LIE_TYPES",
    "NEG_INF",
    "U_INF",
    "AxiomAudit",
    "CartanData",
    "CrystalError",
    "ElementaryFactor",
    "ExtInt",
    "HeadSelectedError",
    "RootVector",
    "axiom_audit",
    "tensor_apply",
    "tensor_stats",
    "DominantWeight",
    "Tableau",
    "crystal_graph",
    "enumerate_crystal",
    "enumerate_semistandard_oracle",
    "highest_weight_tableau",
    "row_stats",
    "tableau_apply",
    "tableau_stats",
    "F_of_T",
    "PsiElement",
    "choose_large_lambda",
    "closed_form_stats",
    "image_bfs",
    "image_member",
    "image_surjectivity_probe",
    "pi_lambda",
    "psi_embed",
    "psi_sequence",
    "verify_theorem",
]
