"""Base classes and shared conventions for wshift contracts.

Numerical conventions (all contracts and CLI documents):
- **Indices**: ``k`` is an integer position in the doubly-infinite basis
  ``{e_k}``; the shift maps ``e_k`` to ``w_k * e_{k+1}``.
- **Windows**: ``(k, n)`` denotes the product ``|w_{k+1}| ... |w_{k+n}|``.
- **Rates**: geometric means of weight moduli over one period.
- **Unbounded values**: ``math.inf`` in memory, ``null`` in serialized form.
- **Complex numbers**: Python ``complex`` in memory; the text grammar
  writes them as ``a+bi``.
"""

from typing import Any

from pydantic import BaseModel, ConfigDict


class ContractModel(BaseModel):
    """Immutable base model with JSON-friendly serialization.

    - Enums serialize as their string values.
    - ``to_document()`` produces a JSON-safe dict.
    - ``from_document()`` hydrates from such a dict.
    """

    model_config = ConfigDict(
        frozen=True,
        populate_by_name=True,
        use_enum_values=True,
    )

    def to_document(self) -> dict[str, Any]:
        """Dump to a JSON-compatible dict."""
        return self.model_dump(mode="json", by_alias=True)

    @classmethod
    def from_document(cls, data: dict[str, Any]) -> "ContractModel":
        """Create a model instance from a document dict."""
        return cls.model_validate(data)
