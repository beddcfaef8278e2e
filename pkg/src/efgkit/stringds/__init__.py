"""Shared string data structures: suffix arrays, backward search, bit sequences, interval sets."""

from efgkit.stringds.bits import RankSelectBits
from efgkit.stringds.intervals import IntervalUnionSet
from efgkit.stringds.suffix import EMPTY, SEPARATOR, GeneralizedSuffixStructure, SaInterval, build_gsa

__all__ = [
    "EMPTY",
    "SEPARATOR",
    "GeneralizedSuffixStructure",
    "IntervalUnionSet",
    "RankSelectBits",
    "SaInterval",
    "build_gsa",
]
