"""Z and chi-square tests that exploit auxiliary information on the sampled law."""

from .bench import (
    BenchConfig,
    DiscreteDist,
    PowerReport,
    draw_sample,
    ecdf_export,
    estimate_power,
    gain_table,
    preset,
    reference_distribution,
)
from .chisq import (
    ChiAuxEstimate,
    PartitionSpec,
    aux_chi2_statistic,
    build_sigma0_sigma1,
    chi2_statistic,
    t_vector,
    theorem2_rate,
    validate_aux_covariance,
)
from .condmean import CondMeanInfo, cond_mean_estimates, theta_star_scalar, theta_star_vector
from .gauss import GaussianSpec, chi2_cdf_quantile, mvn_sample, normal_quantile, singular_mvn_logdensity
from .linalg import psd_order_check, psd_sqrt_product, pseudo_det_rank, pseudo_inverse
from .raking import (
    RakingDesign,
    RakingPartition,
    RakingSchedule,
    partition_matrices,
    phi_matrix,
    rake_step,
    raked_covariance,
    raked_mean,
    two_partition_formulas,
)
from .sample import CellMap, Event, WeightedSample
from .ztest import MeanAuxEstimate, ZTestConfig, aux_z_statistic, theorem1_consequences, theorem1_rate, z_statistic

__version__ = "0.1.0"
