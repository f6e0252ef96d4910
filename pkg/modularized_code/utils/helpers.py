"""
Helper utilities for the DVNUG frame toolkit.
"""
import hashlib
import json
import sys
from datetime import datetime
from fractions import Fraction

import numpy as np


def print_with_timestamp(message):
    """
    Print a progress message with a timestamp to stderr.

    Args:
        message (str): Message to print
    """
    timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S.%f")[:-2]
    print(f"[{timestamp}] {message}", file=sys.stderr)


def unit_phase(theta):
    """
    Evaluate e^{2πiθ} for an exact rational θ.

    θ is reduced mod 1 before the trigonometric evaluation so large arguments
    lose no accuracy.

    Args:
        theta (Fraction | int): Exact phase in turns

    Returns:
        complex: The unit complex number e^{2πiθ}
    """
    turns = Fraction(theta) % 1
    if turns == 0:
        return 1 + 0j
    if turns == Fraction(1, 2):
        return -1 + 0j
    if turns == Fraction(1, 4):
        return 1j
    if turns == Fraction(3, 4):
        return -1j
    return complex(np.exp(2j * np.pi * float(turns)))


def canonical_json(data):
    """
    Serialize data to the canonical (sorted, indented) JSON text used for files.

    Args:
        data: JSON-compatible object

    Returns:
        str: JSON text ending with a newline
    """
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def digest(data):
    """
    SHA-256 digest of the canonical JSON form of data.

    Args:
        data: JSON-compatible object

    Returns:
        str: Hex digest
    """
    return hashlib.sha256(json.dumps(data, sort_keys=True).encode("utf-8")).hexdigest()
