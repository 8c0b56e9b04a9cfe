from egvqc.seeding import derive_seeds, head_seed, split_seed, splitmix64


def test_reference_sequence():
    # published splitmix64 outputs for state 0
    assert derive_seeds(0, 3) == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_state_advances_by_golden_gamma():
    state, _ = splitmix64(0)
    assert state == 0x9E3779B97F4A7C15
    state, _ = splitmix64((1 << 64) - 1)
    assert state == 0x9E3779B97F4A7C14


def test_roles():
    seeds = derive_seeds(42, 5)
    assert split_seed(42) == seeds[0]
    assert [head_seed(42, k) for k in range(4)] == seeds[1:]
    assert len(set(seeds)) == 5
    assert derive_seeds(-1, 2) == derive_seeds((1 << 64) - 1, 2)
