"""Automatic referencing: slice descriptors, sliding-window search, yaw-seeded refinement."""

from .descriptor import SliceDescriptor, compute_descriptor, descriptor_distance
from .search import (
    CandidateBox,
    SearchParams,
    automatic_reference,
    sliding_search,
    template_descriptor,
)

__all__ = [
    "CandidateBox",
    "SearchParams",
    "SliceDescriptor",
    "automatic_reference",
    "compute_descriptor",
    "descriptor_distance",
    "sliding_search",
    "template_descriptor",
]
