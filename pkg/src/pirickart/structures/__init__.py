from .presentations import (
    Matrix,
    ModulePresentation,
    RingPresentation,
    Submodule,
    ValidationError,
    validate_module,
    validate_ring,
)
from .constructions import (
    block_embedding,
    check_module,
    corner_elements,
    cyclic_ring,
    direct_sum,
    integers,
    matrix_ring,
    quotient,
    quotient_lifts,
    ring_as_module,
    ring_product,
    scalar_module,
    submodule_as_module,
    triangular_ring,
    zero_module,
)
from .catalog import FIXTURES, CatalogEntry, catalog_entry, finite_catalog, fixture
from .fileformat import PresentationError, dump_presentation, load_presentation, parse_presentation
