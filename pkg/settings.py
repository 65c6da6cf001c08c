import os

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


# Largest ground set an explicit independent-set family is built for.
MAX_GROUND_SIZE = _int_env("ROUGHMAT_MAX_GROUND_SIZE", 20)

# Exhaustive pair checks (rank axioms, rank extension) over 4^n pairs.
PAIR_CHECK_CAP = _int_env("ROUGHMAT_PAIR_CHECK_CAP", 12)

# Contraction sweeps over every element of an instance.
VERIFY_CAP = _int_env("ROUGHMAT_VERIFY_CAP", 12)

# Approximation-operator property checks: single-subset and pair properties.
PAWLAK_CAP = _int_env("ROUGHMAT_PAWLAK_CAP", 16)
PAWLAK_PAIR_CAP = _int_env("ROUGHMAT_PAWLAK_PAIR_CAP", 10)

LOG_LEVEL = os.getenv("ROUGHMAT_LOG_LEVEL", "WARNING")


def resolve_cap(cap, default: int) -> int:
    return default if cap is None else int(cap)
