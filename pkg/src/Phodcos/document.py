"""JSON persistence of fitted paths."""

import json
from dataclasses import asdict, dataclass, field
from logging import getLogger
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np

from Phodcos.errors import SchemaVersionMismatch
from Phodcos.phcurve import PHSegment
from Phodcos.pipeline import PHPath

logger = getLogger(__name__)

SCHEMA_VERSION = "1"


@dataclass
class ParameterizationDocument:
    xi0: float
    xif: float
    h: float
    segments: List[Dict[str, List[Any]]]
    metadata: Dict[str, Any] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION


def document_from_path(path: PHPath, **metadata: Any) -> ParameterizationDocument:
    segments = [
        {"preimage": segment.preimage.tolist(), "p0": segment.p0.tolist()}
        for segment in path.segments
    ]
    metadata.setdefault("n_segments", path.n_segments)
    return ParameterizationDocument(path.xi0, path.xif, path.h, segments, metadata)


def path_from_document(document: ParameterizationDocument) -> PHPath:
    segments = tuple(
        PHSegment(np.array(item["preimage"], dtype=float), np.array(item["p0"], dtype=float))
        for item in document.segments
    )
    return PHPath(segments, document.xi0, document.xif)


def save_document(document: ParameterizationDocument, target: Union[str, Path]) -> None:
    # json writes floats with repr, the shortest string that round-trips exactly
    Path(target).write_text(json.dumps(asdict(document), indent=2), encoding="utf-8")
    logger.info(f"wrote {len(document.segments)} segments to {target}")


def load_document(source: Union[str, Path]) -> ParameterizationDocument:
    content = json.loads(Path(source).read_text(encoding="utf-8"))
    version = content.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"{source} has schema version {version!r}, expected {SCHEMA_VERSION!r}"
        )
    try:
        return ParameterizationDocument(
            xi0=float(content["xi0"]),
            xif=float(content["xif"]),
            h=float(content["h"]),
            segments=list(content["segments"]),
            metadata=dict(content.get("metadata", {})),
        )
    except KeyError as error:
        raise ValueError(f"{source} lacks the field {error}") from error
