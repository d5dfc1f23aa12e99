"""Tools package for PencilSpec: one BaseTool subclass per subcommand."""

from .almost_tool import AlmostTool
from .base_tool import BaseTool
from .commutant_tool import CommutantTool
from .decompose_tool import DecomposeTool
from .gallery_tool import GalleryTool
from .line_check_tool import LineCheckTool
from .pencil_tool import PencilTool
from .plot_tool import PlotTool
from .residues_tool import ResiduesTool
from .spectrum_tool import SpectrumTool

TOOLS = (
    PencilTool,
    SpectrumTool,
    LineCheckTool,
    DecomposeTool,
    ResiduesTool,
    AlmostTool,
    CommutantTool,
    GalleryTool,
    PlotTool,
)
