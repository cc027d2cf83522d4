"""Garbling of layered circuits with colour-indexed four-row tables.

Every wire gets two fresh 128-bit labels whose last bit (the colour)
differs; the colour pair is random, so a label reveals nothing about the
bit it stands for.  Each gate stores four ciphertexts ordered by the
colours of the operand labels, each encrypting the matching output label
under both operand labels with an all-zero tail for authentication.
The evaluator holds exactly one label per wire and decrypts exactly one
row per gate.

Decode information maps label hashes (never labels) to output bits, and
translation tables re-encrypt the labels of one circuit's output wire
into the input labels of another, letting garbled evaluations chain
without anyone touching plaintext bits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import LayeredCircuit
from .errors import ArityMismatch, DecryptFailure, UnknownLabel
from .hashing import (
    LABEL_BYTES,
    HashDrbg,
    digest_hex,
    dual_dec,
    dual_enc,
    translate_dec,
    translate_enc,
)

_OPS = {
    "AND": lambda a, b: a & b,
    "OR": lambda a, b: a | b,
    "XOR": lambda a, b: a ^ b,
}


def label_color(label: bytes) -> int:
    return label[-1] & 1


def _with_color(raw: bytes, bit: int) -> bytes:
    return raw[:-1] + bytes([(raw[-1] & 0xFE) | (bit & 1)])


def sample_label_pair(drbg: HashDrbg) -> tuple[bytes, bytes]:
    color = drbg.randbit()
    l0 = _with_color(drbg.random_bytes(LABEL_BYTES), color)
    l1 = _with_color(drbg.random_bytes(LABEL_BYTES), 1 - color)
    return l0, l1


@dataclass(frozen=True)
class GarbledGate:
    rows: tuple[bytes, bytes, bytes, bytes]


@dataclass(frozen=True)
class GarbledCircuit:
    circuit: LayeredCircuit
    tables: tuple[GarbledGate, ...]
    const_labels: tuple[bytes, bytes]
    digest_bits: int


@dataclass(frozen=True)
class EncodeInfo:
    """Label pair per input wire, indexed by wire number."""

    pairs: tuple[tuple[bytes, bytes], ...]

    def label_for(self, wire: int, bit: int) -> bytes:
        return self.pairs[wire][bit & 1]


@dataclass(frozen=True)
class DecodeInfo:
    """Output map keyed by label hash; a forged label matches nothing."""

    entries: tuple[tuple[str, int], ...]
    digest_bits: int

    @classmethod
    def from_pair(cls, pair: tuple[bytes, bytes], digest_bits: int) -> "DecodeInfo":
        entries = sorted(
            ((digest_hex(pair[b], digest_bits), b) for b in (0, 1)),
        )
        return cls(tuple(entries), digest_bits)

    def to_lists(self) -> list[list]:
        return [[h, b] for h, b in self.entries]

    @classmethod
    def from_lists(cls, data: list, digest_bits: int) -> "DecodeInfo":
        return cls(tuple((str(h), int(b)) for h, b in data), digest_bits)


@dataclass(frozen=True)
class GarblingResult:
    """Everything the garbler knows; only parts of it ever go public."""

    garbled: GarbledCircuit
    encode: EncodeInfo
    decode: DecodeInfo
    wire_labels: tuple[tuple[bytes, bytes], ...]


def garble_full(c: LayeredCircuit, drbg: HashDrbg, digest_bits: int = 256) -> GarblingResult:
    labels = tuple(sample_label_pair(drbg) for _ in range(c.n_wires))
    tables = []
    for idx, g in enumerate(c.gates):
        rows: list[bytes | None] = [None] * 4
        for a in (0, 1):
            for b in (0, 1):
                la, lb = labels[g.left][a], labels[g.right][b]
                row = (label_color(la) << 1) | label_color(lb)
                out_label = labels[g.out][_OPS[g.op](a, b)]
                rows[row] = dual_enc(la, lb, idx, row, out_label)
        tables.append(GarbledGate(tuple(rows)))
    garbled = GarbledCircuit(
        c, tuple(tables),
        (labels[c.const0][0], labels[c.const1][1]),
        digest_bits,
    )
    encode = EncodeInfo(labels[: c.n_inputs])
    decode = DecodeInfo.from_pair(labels[c.output], digest_bits)
    return GarblingResult(garbled, encode, decode, labels)


def garble_circuit(
    c: LayeredCircuit, seed: int | bytes | str, digest_bits: int = 256
) -> tuple[GarbledCircuit, EncodeInfo, DecodeInfo]:
    """Deterministic garbling: the same circuit and seed give identical bytes."""
    res = garble_full(c, HashDrbg(seed, context="garble"), digest_bits)
    return res.garbled, res.encode, res.decode


def encode_input(encode: EncodeInfo, bits) -> tuple[bytes, ...]:
    values = tuple(int(v) & 1 for v in bits)
    if len(values) != len(encode.pairs):
        raise ArityMismatch(
            f"{len(values)} bits for {len(encode.pairs)} encoder wires")
    return tuple(encode.label_for(w, v) for w, v in enumerate(values))


def evaluate_garbled(gc: GarbledCircuit, inputs: dict[int, bytes],
                     with_trace: bool = False):
    """Evaluate on one label per input wire; returns the output label.

    Raises DecryptFailure when a selected row does not authenticate,
    which is what any tampered table or wrong label comes down to.
    """
    c = gc.circuit
    if set(inputs) != set(range(c.n_inputs)):
        raise ArityMismatch("need exactly one label per input wire")
    have: dict[int, bytes] = dict(inputs)
    have[c.const0] = gc.const_labels[0]
    have[c.const1] = gc.const_labels[1]
    for idx, g in enumerate(c.gates):
        la, lb = have[g.left], have[g.right]
        row = (label_color(la) << 1) | label_color(lb)
        out = dual_dec(la, lb, idx, row, gc.tables[idx].rows[row])
        if out is None:
            raise DecryptFailure(f"gate {idx} row {row} failed to authenticate")
        have[g.out] = out
    if with_trace:
        return have[c.output], have
    return have[c.output]


def decode_output(decode: DecodeInfo, label: bytes) -> int:
    h = digest_hex(label, decode.digest_bits)
    for entry_hex, bit in decode.entries:
        if entry_hex == h:
            return bit
    raise UnknownLabel("label does not match the output map")


@dataclass(frozen=True)
class TranslationTable:
    """Re-keys one wire's labels into another's, keyed by label hash.

    Entries are sorted by key hash, so their order says nothing about
    which plaintext bit each one serves.
    """

    entries: tuple[tuple[str, str], ...]
    digest_bits: int

    def apply(self, label: bytes) -> bytes:
        h = digest_hex(label, self.digest_bits)
        for key, enc in self.entries:
            if key == h:
                down = translate_dec(label, bytes.fromhex(enc))
                if down is None:
                    raise UnknownLabel("translation entry failed to authenticate")
                return down
        raise UnknownLabel("label has no translation entry")

    def to_lists(self) -> list[list[str]]:
        return [[k, e] for k, e in self.entries]

    @classmethod
    def from_lists(cls, data: list, digest_bits: int) -> "TranslationTable":
        return cls(tuple((str(k), str(e)) for k, e in data), digest_bits)


def build_translation(
    up_pair: tuple[bytes, bytes],
    down_pair: tuple[bytes, bytes],
    digest_bits: int = 256,
) -> TranslationTable:
    entries = sorted(
        (digest_hex(up_pair[b], digest_bits),
         translate_enc(up_pair[b], down_pair[b]).hex())
        for b in (0, 1)
    )
    return TranslationTable(tuple(entries), digest_bits)
