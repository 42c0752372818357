"""Loaders for the shipped default fixture files in affectmidi/data."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from typing import Dict

from .affect import ArousalMelodyRegion
from .dynamics import LickBank, RegisterTable, parse_lick_bank, parse_register_table
from .harmony import ChordProgressionMatrix, load_matrix
from .voicing import MotiveTransitionMatrix, parse_motive_matrices


def _read(name: str) -> str:
    return resources.files("affectmidi.data").joinpath(name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def default_matrix() -> ChordProgressionMatrix:
    return load_matrix(_read("progressions.txt"))


@lru_cache(maxsize=None)
def default_motives() -> Dict[ArousalMelodyRegion, MotiveTransitionMatrix]:
    return parse_motive_matrices(_read("motives.txt"))


@lru_cache(maxsize=None)
def default_licks() -> LickBank:
    return parse_lick_bank(_read("licks.txt"))


@lru_cache(maxsize=None)
def default_registers() -> RegisterTable:
    return parse_register_table(_read("registers.txt"))
