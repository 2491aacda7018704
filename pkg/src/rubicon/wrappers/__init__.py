"""Wrapper framework: the uniform contract plus the five built-in kinds."""

from pathlib import Path
from typing import Optional

from ..catalog import SourceDescriptor
from ..errors import CatalogError
from .access import AccessPolicy, AccessRule
from .base import Binding, FindRequest, Wrapper
from .corpus import CorpusWrapper
from .fixture import KnowledgeStubWrapper, MailboxWrapper, RelationalFixtureWrapper
from .httpapi import FixtureServer, HttpApiWrapper

_WRAPPER_CLASSES = {
    "relational-fixture": RelationalFixtureWrapper,
    "document-corpus": CorpusWrapper,
    "mailbox": MailboxWrapper,
    "knowledge-stub": KnowledgeStubWrapper,
    "http-api": HttpApiWrapper,
}


def build_wrapper(descriptor: SourceDescriptor, policy: Optional[AccessPolicy] = None) -> Wrapper:
    cls = _WRAPPER_CLASSES.get(descriptor.wrapper_kind)
    if cls is None:
        raise CatalogError(f"unknown wrapper kind {descriptor.wrapper_kind!r}")
    if policy is None and "path" in descriptor.connection:
        policy = AccessPolicy.for_source_dir(Path(str(descriptor.connection["path"])))
    return cls(descriptor, policy)


__all__ = [
    "AccessPolicy",
    "AccessRule",
    "Binding",
    "FindRequest",
    "Wrapper",
    "RelationalFixtureWrapper",
    "CorpusWrapper",
    "MailboxWrapper",
    "KnowledgeStubWrapper",
    "HttpApiWrapper",
    "FixtureServer",
    "build_wrapper",
]
