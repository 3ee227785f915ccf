"""Static equilibria of convex polytopes and exact infeasibility certificates.

Counts unstable (vertex) and stable (face) equilibria through shadowing
matrices, expands the mono-unstable condition for 3-dimensional 0-skeletons
into systems of quadratic inequalities, and proves those systems unsolvable
by searching for positive integer coefficients whose weighted inequality sum
is strictly convex with a strictly positive exact-rational minimum.
"""

from monoproof.ratcore import (
    Rational,
    RatMatrix,
    RatVector,
    SingularError,
    as_rational,
    eval_quadratic,
    format_rational,
    is_positive_definite,
    parse_rational,
    solve_linear,
)
from monoproof.equilibria import (
    DegenerateSimplex,
    FaceConfig,
    OutsideError,
    PointConfig,
    ShadowMatrix,
    count_stable,
    count_unstable,
    dawson_tips,
    face_shadow_matrix,
    is_hull_vertex,
    load_config,
    shadow_sign,
    simplex_area_vectors,
    simplex_face_vectors,
    vertex_shadow_matrix,
)
from monoproof.expansion import (
    NonPositiveCoefficient,
    QuadraticForm,
    ShadowSystem,
    enumerate_systems,
    inequality_form,
    inequality_forms,
    reconstruct_vertices,
    var_index,
    weighted_inequality_sum,
)
from monoproof.prover import (
    Certificate,
    Exhausted,
    NotConvex,
    ProofReport,
    SearchConfig,
    SystemResult,
    VerifyResult,
    hessian_of,
    minimize_strictly_convex,
    prove_unsolvable,
    search_certificate,
    verify_certificate,
)
from monoproof.tables import (
    CertificateTable,
    ParseError,
    RangeError,
    TableRow,
    bundled_table_path,
    parse_certificate_table,
    serialize_certificate_table,
)

__version__ = "0.1.0"
