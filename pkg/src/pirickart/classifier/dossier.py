"""Everything about one endomorphism ``f``: chains, summand certificates, Fitting index."""

from __future__ import annotations

from ..config import RunConfig
from ..homspace import homomorphism
from ..lattice_ops import essentiality, is_subset, socle
from ..structures import ModulePresentation, Submodule
from .analysis import ModuleAnalysis
from .properties import pi_rickart_certificate
from .verdict import _jsonable


def _basis(N: Submodule) -> list[list[int]]:
    return [list(b) for b in N.basis]


def witness_dossier(M: ModulePresentation, F, config: RunConfig | None = None) -> dict:
    """Per-map report; raises ``ValueError`` if ``F`` is not an endomorphism."""
    config = config or RunConfig()
    f = homomorphism(M, M, F)
    A = ModuleAnalysis(M, config, [f.matrix])
    F = A.witnesses[0]
    out: dict = {"module": M.name, "ring": M.ring.name, "f": f.tolist()}

    kernels = A.kernels(F)
    if kernels.known:
        steps = []
        for n, K in enumerate(kernels.terms, start=1):
            cert = A.summand(K)
            steps.append({
                "n": n,
                "kernel": _basis(K),
                "is_whole_module": K == Submodule.whole(M),
                "direct_summand": bool(cert),
                "idempotent": cert.idempotent.tolist() if cert else None,
            })
        out["kernel_chain"] = steps
        out["n_star"] = kernels.index
    else:
        out["kernel_chain"] = None
        out["n_star"] = None
        out["note"] = f"kernel chain did not stabilize within {config.power_ceiling} powers"

    outcome, reason, evidence = pi_rickart_certificate(A, F)
    out["pi_rickart_at_f"] = {"status": outcome, "reason": reason, **evidence}
    out["rickart_at_f"] = bool(A.summand(A.kernel(F)))

    split = A.fitting_split(F)
    if split is None:
        out["fitting_index"] = None
    else:
        K, I = split
        out["fitting_index"] = kernels.index if A.is_split(K, I) else None
        out["fitting_split"] = {"kernel": _basis(K), "image": _basis(I), "direct": A.is_split(K, I)}

    images = A.images(F)
    out["image_chain"] = [_basis(I) for I in A.image_prefix(F)]
    out["image_chain_stable_at"] = images.index if images.known else None
    out["nilpotent"] = A.is_nilpotent(F)
    out["monomorphism"] = A.is_mono(F)
    K = A.kernel(F)
    if M.is_finite:
        out["kernel_essential"] = is_subset(socle(M), K)
    else:
        out["kernel_essential"] = essentiality(K, config.essential_box)[0]
    return _jsonable(out)
