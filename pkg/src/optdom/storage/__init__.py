from optdom.storage.exporter import ReportExporter
from optdom.storage.loader import (
    FileSpecProvider,
    load_csv_matrix,
    load_json,
    parse_config,
    parse_matrix,
    parse_space,
    parse_vector,
)

__all__ = [
    "FileSpecProvider",
    "ReportExporter",
    "load_csv_matrix",
    "load_json",
    "parse_config",
    "parse_matrix",
    "parse_space",
    "parse_vector",
]
