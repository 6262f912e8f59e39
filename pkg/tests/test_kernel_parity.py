"""Both kernel backends must produce bit-identical results."""

import random

import pytest

from decrement._kernel import _pykernel

_ckernel = pytest.importorskip("decrement._kernel._ckernel")

KINDS = (0, 1, 2)


def all_orders(n):
    return list(_pykernel.weak_order_ranks(n))


class TestEnumerationParity:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_streams_identical(self, n):
        assert list(_ckernel.weak_order_ranks(n)) == all_orders(n)

    def test_count_n6(self):
        assert sum(1 for _ in _ckernel.weak_order_ranks(6)) == sum(
            1 for _ in _pykernel.weak_order_ranks(6)
        )

    def test_bounds(self):
        with pytest.raises(ValueError):
            list(_ckernel.weak_order_ranks(9))
        with pytest.raises(ValueError):
            list(_ckernel.weak_order_ranks(0))


class TestStepParity:
    def test_all_states_all_masks_all_kinds(self):
        for ranks in all_orders(4):
            for amask in range(16):
                for kind in KINDS:
                    assert _ckernel.step_ranks(ranks, amask, kind) == _pykernel.step_ranks(
                        ranks, amask, kind
                    )

    def test_five_world_sample(self):
        rng = random.Random(11)
        orders = all_orders(5)
        for _ in range(300):
            ranks = rng.choice(orders)
            amask = rng.randrange(32)
            kind = rng.choice(KINDS)
            assert _ckernel.step_ranks(ranks, amask, kind) == _pykernel.step_ranks(
                ranks, amask, kind
            )

    def test_bad_kind(self):
        # believed case, so the kind code is actually inspected
        with pytest.raises(ValueError):
            _ckernel.step_ranks((1, 0), 0b10, 9)
        with pytest.raises(ValueError):
            _pykernel.step_ranks((1, 0), 0b10, 9)

    def test_bad_kind_unreached_on_identity_branch(self):
        # not-believed inputs return unchanged before kind validation
        assert _ckernel.step_ranks((1, 0), 0b01, 9) == (1, 0)
        assert _pykernel.step_ranks((1, 0), 0b01, 9) == (1, 0)


class TestFrontalParity:
    def test_all_states_all_masks(self):
        for ranks in all_orders(4):
            for amask in range(16):
                assert _ckernel.frontal_bits(ranks, amask) == _pykernel.frontal_bits(
                    ranks, amask
                )


class TestDrParity:
    def test_sampled_constraint_checks(self):
        rng = random.Random(23)
        orders = all_orders(4)
        for _ in range(2000):
            before = rng.choice(orders)
            after = rng.choice(orders)
            amask = rng.randrange(16)
            cmask = rng.randrange(256)
            assert _ckernel.dr_satisfied(before, after, amask, cmask) == _pykernel.dr_satisfied(
                before, after, amask, cmask
            ), (before, after, amask, cmask)

    def test_five_world_sample(self):
        rng = random.Random(29)
        orders = all_orders(5)
        for _ in range(500):
            before = rng.choice(orders)
            after = rng.choice(orders)
            amask = rng.randrange(32)
            cmask = rng.randrange(256)
            assert _ckernel.dr_satisfied(before, after, amask, cmask) == _pykernel.dr_satisfied(
                before, after, amask, cmask
            )


class TestCompressParity:
    def test_integer_keys(self):
        rng = random.Random(31)
        for _ in range(200):
            n = rng.randrange(1, 9)
            keys = [rng.randrange(-4, 12) for _ in range(n)]
            assert _ckernel.compress_keys(keys) == _pykernel.compress_keys(keys)
