"""branchalg: decide equalities of subtree relations on infinite binary
trees, verify the Thompson generator presentations inside that algebra, and
enumerate and check finite relation algebras."""

__version__ = "0.1.0"
