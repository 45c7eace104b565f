from abc import ABC, abstractmethod
from typing import Any


class BaseOracle(ABC):
    """Base class for slow reference computations

    An oracle recomputes a quantity by an independent method so that the
    fast library result can be checked against it in tests and suite runs.
    """

    name: str = "oracle"

    @abstractmethod
    def compute(self, *args: Any) -> Any:
        """Compute the reference value

        Returns:
            The reference value, or None when the oracle cannot decide
        """
        pass

    @abstractmethod
    def agrees(self, result: Any, *args: Any) -> bool:
        """Check a library result against the reference

        Args:
            result: Value produced by the library
            args: The inputs that produced it

        Returns:
            False only when the oracle refutes the result
        """
        pass
