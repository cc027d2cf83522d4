"""1-of-2 oblivious transfer over a prime-order subgroup.

Message flow (sender S holds m0, m1; receiver R holds choice bit b):

    S: secret s, publishes c = g^s
    R: secret k, sends y_b = g^k and y_(1-b) = c * (g^k)^-1
    S: checks y0 * y1 == c, then for each i sends
       (A_i, B_i) = (g^r_i, m_i XOR stream(y_i^r_i))  with fresh r_i
    R: recovers m_b = B_b XOR stream(A_b^k)

The product check forces R to know the discrete log of at most one of
y0, y1, so only one message is recoverable; S sees (y0, y1) whose joint
distribution is the same for either b.  Messages of any equal or unequal
length work, masked block by block with a hash keystream.

The "toy23" group (p=23, q=11, g=4) keeps every value hand-checkable in
tests; "modp2048" is a 2048-bit safe-prime group with generator 4, whose
order-q subgroup the membership checks enforce.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyCheckFailed, InvalidGroupElement
from .hashing import HashDrbg, mask_stream, xor_bytes

_MODP_2048_P = int(
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF",
    16,
)


@dataclass(frozen=True)
class GroupParams:
    name: str
    p: int
    q: int
    g: int

    @property
    def element_bytes(self) -> int:
        return (self.p.bit_length() + 7) // 8


TOY_GROUP = GroupParams("toy23", p=23, q=11, g=4)
MODP2048 = GroupParams("modp2048", p=_MODP_2048_P, q=(_MODP_2048_P - 1) // 2, g=4)

GROUPS = {g.name: g for g in (TOY_GROUP, MODP2048)}


def group_by_name(name: str) -> GroupParams:
    try:
        return GROUPS[name]
    except KeyError:
        raise InvalidGroupElement(f"unknown group {name!r}") from None


def in_subgroup(params: GroupParams, x: int) -> bool:
    return 1 <= x < params.p and pow(x, params.q, params.p) == 1


def element_to_bytes(params: GroupParams, x: int) -> bytes:
    return x.to_bytes(params.element_bytes, "big")


@dataclass(frozen=True)
class OTSenderState:
    params: GroupParams
    secret: int
    c: int


@dataclass(frozen=True)
class OTChoose:
    y0: int
    y1: int


@dataclass(frozen=True)
class OTReceiverState:
    params: GroupParams
    k: int
    choice: int
    c: int


@dataclass(frozen=True)
class OTTransfer:
    c0: tuple[int, bytes]
    c1: tuple[int, bytes]


def _sender_from_secret(params: GroupParams, secret: int) -> tuple[int, OTSenderState]:
    c = pow(params.g, secret, params.p)
    return c, OTSenderState(params, secret, c)


def ot_sender_init(params: GroupParams, rng: HashDrbg) -> tuple[int, OTSenderState]:
    return _sender_from_secret(params, rng.randbelow(params.q))


def _receiver_from_secret(
    params: GroupParams, c: int, choice: int, k: int
) -> tuple[OTChoose, OTReceiverState]:
    if not in_subgroup(params, c):
        raise InvalidGroupElement(f"c={c} is not a subgroup element")
    mine = pow(params.g, k, params.p)
    other = c * pow(mine, -1, params.p) % params.p
    y0, y1 = (mine, other) if choice == 0 else (other, mine)
    return OTChoose(y0, y1), OTReceiverState(params, k, choice & 1, c)


def ot_receiver_choose(
    params: GroupParams, c: int, choice: int, rng: HashDrbg
) -> tuple[OTChoose, OTReceiverState]:
    return _receiver_from_secret(params, c, choice, rng.randbelow(params.q))


def ot_sender_transfer(
    state: OTSenderState,
    y0: int,
    y1: int,
    m0: bytes,
    m1: bytes,
    rng: HashDrbg,
) -> OTTransfer:
    p = state.params.p
    if not in_subgroup(state.params, y0) or not in_subgroup(state.params, y1):
        raise InvalidGroupElement("receiver key outside the subgroup")
    if y0 * y1 % p != state.c:
        raise ConsistencyCheckFailed("y0 * y1 != c")
    halves = []
    for y, m in ((y0, m0), (y1, m1)):
        r = rng.randbelow(state.params.q)
        a = pow(state.params.g, r, p)
        shared = element_to_bytes(state.params, pow(y, r, p))
        halves.append((a, xor_bytes(m, mask_stream(shared, len(m)))))
    return OTTransfer(halves[0], halves[1])


def ot_receiver_recover(state: OTReceiverState, transfer: OTTransfer) -> bytes:
    a, masked = (transfer.c0, transfer.c1)[state.choice]
    shared = element_to_bytes(state.params, pow(a, state.k, state.params.p))
    return xor_bytes(masked, mask_stream(shared, len(masked)))
