"""
Runtime configuration
Values come from the environment (or a local .env file) with typed defaults
"""

import os
import sys
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _env_flag(name: str, default: bool = False) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


# Hard ceiling on Weyl group enumeration (E6 is the largest supported group)
WEYL_GROUP_CAP = int(os.getenv('WEYL_GROUP_CAP', '51840'))

# Where the CLI writes the memoized KL table after a run (unset = no dump)
KL_DUMP_PATH = os.getenv('KL_DUMP_PATH') or None

DEFAULT_OUTPUT_FORMAT = os.getenv('DEFAULT_OUTPUT_FORMAT', 'table')
DEFAULT_ORDER_VARIANT = os.getenv('DEFAULT_ORDER_VARIANT', 'root')

VERBOSE = _env_flag('BLOCKCALC_VERBOSE')


def status(message: str):
    """Progress line on stderr, only when BLOCKCALC_VERBOSE is set"""
    if VERBOSE:
        print(message, file=sys.stderr)
