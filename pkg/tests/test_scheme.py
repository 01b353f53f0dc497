import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsss.access import AccessStructure, StructureInvalid
from gsss.polyarith import InsufficientPrimes
from gsss.scheme import (
    DuplicateShare,
    EmptyCoalition,
    EmptySubset,
    PrimeShare,
    PublicPolynomial,
    Secret,
    ShareFormatError,
    UnknownParticipant,
    characteristic_number,
    coalition_product,
    deal,
    reconstruct,
)

from conftest import all_nonempty_subsets, random_instances

SHARES = {"A": PrimeShare("A", 2), "B": PrimeShare("B", 3), "C": PrimeShare("C", 5)}


def test_characteristic_numbers():
    assert characteristic_number({"A", "B"}, SHARES) == 6
    assert characteristic_number({"C"}, SHARES) == 5
    assert characteristic_number({"A", "B", "C"}, SHARES) == 30


def test_characteristic_number_errors():
    with pytest.raises(EmptySubset):
        characteristic_number(set(), SHARES)
    with pytest.raises(UnknownParticipant):
        characteristic_number({"A", "Z"}, SHARES)


def test_worked_instance(worked):
    assert worked.public.coefficients == (132, -21, 1)
    assert [c.value for c in worked.characteristic_numbers] == [6, 15]


def test_single_set_instance():
    s = AccessStructure.from_sets("A", [{"A"}])
    d = deal(s, 0, 2, b"x", primes={"A": 2})
    assert d.public.coefficients == (-2, 1)


def test_deal_is_deterministic():
    s = AccessStructure.from_sets("ABCD", [{"A", "B"}, {"C"}, {"B", "C", "D"}])
    assert deal(s, 12345, 64, b"seed") == deal(s, 12345, 64, b"seed")
    assert deal(s, 12345, 64, b"seed").shares != deal(s, 12345, 64, b"other").shares


def test_deal_errors():
    with pytest.raises(StructureInvalid):
        deal(AccessStructure.from_sets("AB", []), 1, 16, b"s")
    with pytest.raises(StructureInvalid):
        deal(AccessStructure.from_sets("AB", [{"A"}, {"A"}]), 1, 16, b"s")
    with pytest.raises(InsufficientPrimes):
        deal(AccessStructure.from_sets("ABC", [{"A"}]), 1, 2, b"s")
    with pytest.raises(StructureInvalid):
        deal(AccessStructure.from_sets("AB", [{"A"}]), 1, 2, b"s", primes={"A": 3, "B": 3})
    with pytest.raises(StructureInvalid):
        deal(AccessStructure.from_sets("AB", [{"A"}]), 1, 2, b"s", primes={"A": 4, "B": 3})


def test_coalition_products():
    assert coalition_product({"A", "B"}, [SHARES["A"], SHARES["B"]]) == 6
    assert coalition_product({"A", "C"}, [SHARES["A"], SHARES["C"]]) == 10
    assert coalition_product(None, [SHARES["B"]]) == 3


def test_coalition_errors():
    with pytest.raises(EmptyCoalition):
        coalition_product(None, [])
    with pytest.raises(DuplicateShare):
        coalition_product(None, [SHARES["A"], SHARES["A"]])
    with pytest.raises(UnknownParticipant):
        coalition_product({"A", "B"}, [SHARES["A"]])


def test_reconstruct_worked(worked):
    assert reconstruct(worked.public, 6) == 42
    assert reconstruct(worked.public, 15) == 42
    assert reconstruct(worked.public, 10) == 22
    assert reconstruct(worked.public, 30) == 402  # superset of {A,B} is not authorized


def test_completeness_and_soundness_exhaustive():
    for structure, secret, dealing in random_instances(60, seed=7):
        authorized = set(structure.authorized_sets)
        for coalition in all_nonempty_subsets(structure.participants):
            r = coalition_product(coalition, [dealing.shares[m] for m in coalition])
            if coalition in authorized:
                assert reconstruct(dealing.public, r) == secret
            else:
                assert reconstruct(dealing.public, r) != secret


def test_characteristic_numbers_distinct():
    for _, _, dealing in random_instances(40, seed=11):
        values = [c.value for c in dealing.characteristic_numbers]
        assert len(set(values)) == len(values)
        assert dealing.public.k == len(values)
        assert dealing.public.poly.is_monic()


def test_public_polynomial_json_round_trip(worked):
    data = worked.public.to_json()
    assert data == {"k": 2, "coefficients": ["132", "-21", "1"]}
    assert PublicPolynomial.from_json(data) == worked.public


@pytest.mark.parametrize(
    "bad",
    [{"k": 2}, {"k": "2", "coefficients": ["1"]}, {"k": 1, "coefficients": ["1", "1", "1"]},
     {"k": 1, "coefficients": ["1", "2"]}, {"k": 1, "coefficients": ["x", "1"]}],
)
def test_public_polynomial_rejects_bad_json(bad):
    with pytest.raises(ShareFormatError):
        PublicPolynomial.from_json(bad)


def test_share_json_round_trip():
    share = PrimeShare("A", 2**127 - 1)
    assert share.to_json() == {"participant": "A", "prime": str(2**127 - 1)}
    assert PrimeShare.from_json(share.to_json()) == share
    with pytest.raises(ShareFormatError):
        PrimeShare.from_json({"participant": "A", "prime": 2.5})


@given(st.binary(min_size=1, max_size=64).filter(lambda b: b[0] != 0))
def test_secret_bytes_round_trip(data):
    assert Secret.from_bytes(data).to_bytes() == data
    assert Secret.parse("0x" + data.hex()) == Secret.from_bytes(data)


def test_secret_parse():
    assert Secret.parse("42").value == 42
    assert Secret.parse("0x0102").value == 258
    with pytest.raises(ValueError):
        Secret(-1)


def test_large_secret_and_primes():
    rng = random.Random(5)
    s = AccessStructure.from_sets("ABCDE", [{"A", "B"}, {"C", "D", "E"}, {"B", "E"}])
    secret = rng.getrandbits(512)
    d = deal(s, secret, 256, b"big")
    assert all(p.prime.bit_length() == 256 for p in d.shares.values())
    for subset in s.authorized_sets:
        r = coalition_product(subset, [d.shares[m] for m in subset])
        assert reconstruct(d.public, r) == secret


class CountingInt(int):
    count = 0

    def __mul__(self, other):
        CountingInt.count += 1
        return int(self) * int(other)

    __rmul__ = __mul__


def test_reconstruct_uses_exactly_k_multiplications():
    for _, _, dealing in random_instances(20, seed=3):
        some_share = next(iter(dealing.shares.values()))
        CountingInt.count = 0
        reconstruct(dealing.public, CountingInt(some_share.prime))
        assert CountingInt.count == dealing.public.k
