"""nl2chart: natural-language questions to charts over CSV databases.

A three-stage agent workflow (schema processing, query composition,
execution-guided validation) turns questions into sentences of a SQL-like
visualization query language, executes them on an embedded relational
engine, and emits declarative chart specs. A rule-based harness scores
batches of benchmark cases.
"""

__version__ = "0.1.0"
