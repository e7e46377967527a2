"""``K(D_n)`` and ``K(D_2n)`` for odd ``n`` from a witness for ``K(Z/n)``."""

from __future__ import annotations

from ..descent import DEFAULT_RETRIES
from ..errors import HypothesisError
from ..groups import cyclic, dihedral, phi_wreath_dihedral
from ..scalars import FieldSpec
from .certificate import Certificate
from .common import DESCENT_GATE
from .theorem16 import theorem14_reduce, theorem15_pipeline
from .theorem19 import theorem19_construct
from .theorem110 import theorem110_construct
from .witness import RationalityWitness


def theorem42_pipeline(n: int, K: FieldSpec, witness: RationalityWitness | None, seed: int = 0,
                       max_retries: int = DEFAULT_RETRIES, gate: int = DESCENT_GATE) -> Certificate:
    if n < 1 or n % 2 == 0:
        raise HypothesisError("requires n odd")
    cert = Certificate("4.2", K, {"n": n}, seed)
    if n == 1:
        # D_1 = Z/2 and D_2 = Z/2 x Z/2
        cert.add_sub(theorem14_reduce(dihedral(1), K, seed, max_retries, gate))
        cert.add_sub(theorem15_pipeline(1, K, seed, max_retries, gate))
        cert.claim("degenerate case n = 1", {"type": "derived", "from": "1.4, 1.5"})
        return cert
    if witness is None:
        raise HypothesisError("requires a rationality witness for K(Z/n)")
    Cn = cyclic(n)
    if witness.group != Cn:
        raise HypothesisError("witness is for a different group")
    phi, ws = phi_wreath_dihedral(n)
    cert.claim("Z/n wr Z/2 is isomorphic to Z/n x D_n", {
        "type": "group_hom", "source": ws.total.to_json(), "target": phi.target.to_json(),
        "map": list(phi.map), "bijective": True})
    cert.add_sub(theorem110_construct(Cn, cyclic(2), K, witness, seed, max_retries, gate))
    cert.claim("K(Z/n wr Z/2) is rational over K(Z/2)", {"type": "derived", "from": "1.10 with the witness"})
    cert.add_sub(theorem19_construct(Cn, dihedral(n), K, witness, seed, max_retries, gate))
    cert.claim("K(Z/n x D_n) is rational over K(Z/n) K(D_n)", {"type": "derived", "from": "1.9 with the witness"})
    cert.claim("K(D_n) is stably rational over K", {"type": "derived", "from": "the isomorphism and both subs"})
    cert.add_sub(theorem15_pipeline(n, K, seed, max_retries, gate))
    cert.claim("K(D_2n) is rational over K(D_n)", {"type": "derived", "from": "1.5"})
    return cert
