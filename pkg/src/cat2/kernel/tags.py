"""Canonical identifiers for generated cells.

Generated presentations (products, duals, elements, commas, functor
categories) name their cells from the content of the cell, never from an
enumeration index, so two constructions of the same thing are literally
equal.
"""

from typing import Iterable, Mapping


def pair(a: str, b: str) -> str:
    return f"<{a},{b}>"


def identity(x: str) -> str:
    return f"id_{x}"


def join(*parts: str) -> str:
    return "|".join(parts)


def mapping(values: Mapping[str, str], keys: Iterable[str] = None) -> str:
    keys = sorted(values) if keys is None else sorted(keys)
    return ",".join(f"{key}:{values[key]}" for key in keys)


def functor(on_obj: Mapping[str, str], on_mor: Mapping[str, str], identities: Iterable[str]) -> str:
    skip = set(identities)
    return "{" + mapping(on_obj) + "|" + mapping(on_mor, [m for m in on_mor if m not in skip]) + "}"


def components(values: Mapping[str, str]) -> str:
    return "[" + mapping(values) + "]"


def arrow(tag: str, src: str, tgt: str) -> str:
    """Tag of a morphism between generated objects, e.g. in a functor category."""
    return f"{tag}:{src}=>{tgt}"


def over(k: str, base: str) -> str:
    """Tag of a slice or coslice morphism k, indexed by the object it is read against."""
    return f"{k}/{base}"
