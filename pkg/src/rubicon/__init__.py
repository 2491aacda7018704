"""rubicon: a federated query engine for the find/from/where algebra.

Statements are parsed, their natural-language predicates translated per
source, plans chosen by a cost-based optimizer, and results materialized as
named, inspectable workspace tables — interactively one statement at a time,
or as whole compiled scripts.
"""

__version__ = "0.1.0"
