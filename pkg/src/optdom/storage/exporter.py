import dataclasses
import json
import logging
import math
import os
import tempfile
from enum import Enum
from typing import Any, Dict

import numpy as np

from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.norm_estimate import NormEstimate
from optdom.norm_engine.entities.space_spec import SpaceSpec
from optdom.norm_engine.matop.operations import describe_matrix

logger = logging.getLogger(__name__)


class ReportExporter:
    """Écrit les rapports sur disque de façon atomique (fichier temporaire puis renommage).

    La sérialisation JSON est déterministe : clés triées, flottants non finis
    remplacés par null.
    """

    def _serialize(self, obj: Any) -> Any:
        """Helper to serialize report objects to JSON-compatible types."""
        if isinstance(obj, NormEstimate):
            return obj.to_dict()
        elif isinstance(obj, FiniteVector):
            return {"indices": list(obj.indices), "values": list(obj.values)}
        elif isinstance(obj, SpaceSpec):
            return obj.describe()
        elif isinstance(obj, MatrixOperator):
            return describe_matrix(obj)
        elif isinstance(obj, Enum):
            return obj.value
        elif isinstance(obj, (float, np.floating)):
            value = float(obj)
            return value if math.isfinite(value) else None
        elif isinstance(obj, (bool, np.bool_)):
            return bool(obj)
        elif isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.ndarray):
            return [self._serialize(v) for v in obj.tolist()]
        elif hasattr(obj, "to_dict"):
            return self._serialize(obj.to_dict())
        elif dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            return {f.name: self._serialize(getattr(obj, f.name))
                    for f in dataclasses.fields(obj) if not f.name.startswith("_")}
        elif isinstance(obj, (list, tuple)):
            return [self._serialize(item) for item in obj]
        elif isinstance(obj, dict):
            return {str(k): self._serialize(v) for k, v in obj.items()}
        else:
            return obj

    def to_json(self, payload: Any) -> str:
        return json.dumps(self._serialize(payload), indent=2, sort_keys=True, allow_nan=False,
                          ensure_ascii=False) + "\n"

    def export_json(self, payload: Dict[str, Any], path: str) -> str:
        return self.export_text(self.to_json(payload), path)

    def export_text(self, text: str, path: str) -> str:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        fd, tmp_path = tempfile.mkstemp(prefix=".optdom-", suffix=".tmp", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as file:
                file.write(text)
            os.replace(tmp_path, path)
        except BaseException:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise
        logger.info("Wrote %s", path)
        return path
