from ._domain_spec import (
    DomainSpec,
    IntervalUnion,
    Ball,
    Ellipsoid,
    Cuboid,
    Polygon,
    DisjointUnion,
    measure,
    scale,
)
from ._disjoint import check_disjoint, check_boxes_overlap
from ._layout import arrange_along_axis
from ._document import DOMAIN_TYPES, spec_to_dict, spec_from_dict
