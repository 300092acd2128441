use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "nonavg",
    version,
    about = "Build and verify non-averaging sets and compute exact extremal sizes"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Where to write the result; `-` is standard output. File outputs get a
    /// `<file>.manifest.json` sidecar.
    #[arg(long, short, global = true, default_value = "-", env = "NONAVG_OUTPUT")]
    pub output: String,

    /// Limit on distinct tuples in higher-dimensional sum sets and on points
    /// produced by constructions or progressions.
    #[arg(long, global = true, env = "NONAVG_MAX_CELLS")]
    pub max_cells: Option<u64>,

    /// Limit on the range of a dense one-dimensional subset-sum table.
    #[arg(long, global = true, env = "NONAVG_MAX_SUM_RANGE")]
    pub max_sum_range: Option<u64>,

    /// Attempts for randomized routines before they fall back or give up.
    #[arg(long, global = true, env = "NONAVG_RETRIES")]
    pub retries: Option<u32>,

    /// Largest n accepted by the exact searches.
    #[arg(long, global = true, env = "NONAVG_MAX_SEARCH_N")]
    pub max_search_n: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an explicit non-averaging set or a disjoint-sums pair.
    #[command(subcommand)]
    Construct(Construct),

    /// Decide whether a set is non-averaging.
    Verify {
        /// IntSet JSON, or a bare array of integers or points; `-` reads stdin.
        #[arg(long)]
        input: String,
        /// Also run the subset-sum disjointness criterion.
        #[arg(long)]
        criterion: bool,
    },

    /// Exact h(n), the largest non-averaging subset of [n].
    Hmax {
        #[arg(long)]
        n: u64,
        #[arg(long, env = "NONAVG_WORKERS")]
        workers: Option<usize>,
        /// Emit h(1..n) as CSV.
        #[arg(long)]
        table: bool,
    },

    /// Exact H(n), the largest pair of subsets of [n] with disjoint nonzero sums.
    #[command(name = "Hmax")]
    BigHmax {
        #[arg(long)]
        n: u64,
        /// Emit H(1..n) as CSV.
        #[arg(long)]
        table: bool,
    },

    /// Largest non-averaging subset of the box [d1] x ... x [dk].
    Boxmax {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<u64>,
        #[arg(long, env = "NONAVG_WORKERS")]
        workers: Option<usize>,
    },

    /// Tukey depth, convex position, minimax fits and density increments
    #[command(subcommand)]
    Geometry(Geometry),

    /// Progressions and base-H embeddings, plus zonotope rounding
    #[command(subcommand)]
    Structure(Structure),

    /// Exponent constants and tables
    #[command(subcommand)]
    Bounds(Bounds),
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// {i q^3 + i(i+1)/2 : 1 <= i < q}
    Bosznay {
        #[arg(long)]
        q: i64,
    },
    /// Lattice points on the paraboloid in [m]^(d-1) x [d-1, (d-1) m^2].
    Paraboloid {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: i64,
    },
    /// B1 = [floor(c sqrt n)], B2 = [n - floor(c sqrt n), n].
    StrausPair {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "1")]
        c: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum Geometry {
    /// Exact Tukey depth of one point, or of every point.
    Tukey {
        #[arg(long)]
        input: String,
        /// Comma-separated coordinates, each an integer or p/q.
        #[arg(long, value_delimiter = ',')]
        point: Option<Vec<String>>,
        #[arg(long, env = "NONAVG_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Whether every point has depth at most delta |A|.
    Delta {
        #[arg(long)]
        input: String,
        #[arg(long)]
        delta: String,
        #[arg(long, env = "NONAVG_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Minimax affine fit of samples `[[x...], value]`.
    Fit {
        #[arg(long)]
        input: String,
    },
    /// Best affine approximation over a family of grid cubes.
    Lemma22 {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, value_enum, default_value_t = Oracle::Random)]
        oracle: Oracle,
        /// Fraction of [m]^(d-1) to sample as the cell set I, as p/q.
        #[arg(long, default_value = "1")]
        fraction: String,
        #[arg(long, default_value_t = nonavg_core::geometry::DEFAULT_REFINE)]
        refine: usize,
        #[arg(long, env = "NONAVG_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "NONAVG_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Search dyadic sub-boxes and halfspace caps for a density increment.
    Increment {
        #[arg(long)]
        input: String,
        /// Lower corner of the box; defaults to the bounding box of the input.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        min: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        max: Option<Vec<i64>>,
        #[arg(long, default_value = "1/20")]
        eps: String,
        #[arg(long, default_value_t = 3)]
        max_level: u32,
        #[arg(long)]
        no_caps: bool,
        #[arg(long, default_value_t = 4)]
        radius: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Linear,
    Square,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Structure {
    /// Report the size of a progression and whether it is proper or homogeneous.
    GapCheck {
        #[arg(long)]
        input: String,
        /// Also report the dilation by this factor (integer or p/q).
        #[arg(long)]
        dilate: Option<String>,
        /// Coefficients of this point under the identification map.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        identify: Option<Vec<i64>>,
    },
    /// Flatten a set into Z by base H and check the round trip.
    Embed {
        #[arg(long)]
        input: String,
        /// Defaults to the faithfulness threshold.
        #[arg(long)]
        h: Option<i64>,
        /// Compare non-averaging verdicts before and after flattening.
        #[arg(long)]
        check_averaging: bool,
    },
    /// Round a zonotope point to a nearby subset sum.
    Zonotope {
        #[arg(long)]
        input: String,
        #[arg(long, env = "NONAVG_SEED", default_value_t = nonavg_core::structure::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum Bounds {
    /// Exponents alpha_d for d = 1..d_max.
    Alpha {
        #[arg(long, default_value_t = 10)]
        d_max: usize,
    },
    /// Exact maximum of the exponent-gap expression over a zeta grid.
    Obs41 {
        /// Single zeta (p/q or decimal) instead of a grid.
        #[arg(long)]
        zeta: Option<String>,
        /// With --zeta: the epsilon to use. Defaults to zeta/100.
        #[arg(long)]
        eps: Option<String>,
        /// Grid zeta = k/steps for k = 1..steps-1.
        #[arg(long, default_value_t = 100)]
        steps: u32,
        /// Grid epsilon as a multiple of zeta.
        #[arg(long, default_value = "1/100")]
        eps_ratio: String,
        #[arg(long, default_value_t = 10)]
        d_max: usize,
        #[arg(long, default_value_t = 5)]
        gap_max: usize,
    },
    /// Empirical exponents log|A| / log|B| of constructions and exact h(n).
    Exponents {
        #[arg(long, value_delimiter = ',')]
        bosznay: Vec<i64>,
        /// Entries `d:m`.
        #[arg(long, value_delimiter = ',')]
        paraboloid: Vec<String>,
        /// Include h(n) rows for n = 2..h_max.
        #[arg(long)]
        h_max: Option<u64>,
        /// Check each construction is non-averaging first.
        #[arg(long)]
        verify: bool,
    },
}
