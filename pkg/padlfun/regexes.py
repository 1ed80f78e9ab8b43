
import re

RE_PADIC = re.compile(
    r"^\s*(\d+)\^(-?\d+)\s*\*\s*(\d+)\s+mod\s+(\d+)\^(-?\d+)\s*$"
)
"""
Regex matching a serialized p-adic number "p^a * u mod p^M".
"""
RE_PADIC_ZERO = re.compile(r"^\s*0(\s+mod\s+(\d+)\^(-?\d+))?\s*$")
"""
Regex matching a serialized p-adic zero, with or without precision.
"""
RE_WEIGHT = re.compile(r"^\s*\(\s*(\d+)\s+mod\s+(\d+)\s*;\s*(.+?)\s*\)\s*$")
"""
Regex matching a serialized weight "(a mod p-1; u)".
"""
RE_FORM = re.compile(r"^\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$")
"""
Regex matching a binary quadratic form "(a, b, c)".
"""
RE_FRACTION = re.compile(r"^\s*(-?\d+)(\s*/\s*(\d+))?\s*$")
"""
Regex matching an exact rational "n" or "n/d".
"""
RE_HGROUP_ID = re.compile(r"^\s*\[([-\d,\s]*)\]\s*;\s*(\d+)\s*$")
"""
Regex matching an HGroup element id "[k_1, ..., k_t]; lambda".
"""
