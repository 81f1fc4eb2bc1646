"""Temporal transitive orientation: recognition, completion and reductions."""
from .core import (DirectedTimeEdge, Instance, MultiLabelTemporalGraph, Orientation,
                   ParseError, TemporalGraph, Variant, parse_instance, serialize_instance)

__all__ = ["DirectedTimeEdge", "Instance", "MultiLabelTemporalGraph", "Orientation",
           "ParseError", "TemporalGraph", "Variant", "parse_instance", "serialize_instance"]
