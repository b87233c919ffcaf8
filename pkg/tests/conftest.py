"""Shared numerical oracles.

The eigensolver route below recomputes spectra of fusion-ring
representations without the trace formula: it diagonalizes a random
combination of the representing matrices and matches each eigenvector's
character signature against the spectrum points.
"""

import numpy as np

from verlinde_kit.fusion import weyl_character_at


def eigensolver_spectrum(rep, rng, tol=1e-6):
    """Multiplicity of each spectrum point, via numpy.linalg.eig.

    The completed matrices commute, so a generic complex combination has
    the shared eigenbasis; the Rayleigh quotients of an eigenvector u
    against every basis matrix give the character values at one spectrum
    point, and counting eigenvectors per point gives the multiplicity.
    """
    level = rep.ring.level
    labels = rep.ring.basis
    mats = {k: m.astype(complex) for k, m in rep.complete().items()}
    combo = np.zeros((rep.dim, rep.dim), dtype=complex)
    for k in labels:
        combo += complex(rng.normal(), rng.normal()) * mats[k]
    _, vecs = np.linalg.eig(combo)
    targets = [
        (elem, np.array([weyl_character_at(level, k, elem) for k in labels]))
        for elem in level.spec
    ]
    counts = {}
    for i in range(vecs.shape[1]):
        u = vecs[:, i]
        norm = (u.conj() @ u).real
        sig = np.array([(u.conj() @ (mats[k] @ u)) / norm for k in labels])
        matches = [e for e, t in targets if np.max(np.abs(sig - t)) < tol]
        assert len(matches) == 1, (
            f"eigenvector {i} matches {len(matches)} spectrum points"
        )
        counts[matches[0]] = counts.get(matches[0], 0) + 1
    return counts
