"""Root-seed expansion.

Every random stream in a run derives from one integer through the splitmix64
sequence: output 0 seeds the train/test split, output ``1 + k`` seeds the
parameter initialisation of classifier head ``k``.
"""

_MASK = (1 << 64) - 1


def splitmix64(state: int) -> tuple[int, int]:
    """Advance ``state`` and return ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


def derive_seeds(root: int, count: int) -> list[int]:
    state = root & _MASK
    out = []
    for _ in range(count):
        state, value = splitmix64(state)
        out.append(value)
    return out


def split_seed(root: int) -> int:
    return derive_seeds(root, 1)[0]


def head_seed(root: int, head: int) -> int:
    return derive_seeds(root, head + 2)[head + 1]
