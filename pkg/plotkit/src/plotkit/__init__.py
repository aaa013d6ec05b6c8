"""Figure regeneration for lrquench CSV tables."""

from .figspec import (KINDS, REQUIRED_COLUMNS, SCALES, FigureSpec,
                      SchemaError, load_table)
from .render import fit_loglog, render

__version__ = "0.1.0"
