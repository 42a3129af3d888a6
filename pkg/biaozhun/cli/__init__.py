"""命令行与 JSON 文档"""
from biaozhun.cli.commands import build_parser, main
from biaozhun.cli.documents import (jet_from_document, jet_to_document, map_from_document, map_to_document,
                                    polynomial_from_document, polynomial_to_document, spec_from_document,
                                    spec_to_document)

__all__ = [
    "main", "build_parser",
    "jet_from_document", "jet_to_document", "map_from_document", "map_to_document",
    "spec_from_document", "spec_to_document", "polynomial_from_document", "polynomial_to_document",
]
