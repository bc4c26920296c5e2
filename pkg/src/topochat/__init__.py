"""Knowledge-grounded dialogue and analysis engine for topological materials.

The package combines a materials property graph (MaterialsKG), a read-only
Cypher subset for querying it, a literature QA vector index, a two-phase
prompt pipeline that turns natural language into cited answers, element
frequency analytics, a triplicate-trial evaluation harness, and an HTTP
service exposing all of it.
"""

__version__ = "0.1.0"
