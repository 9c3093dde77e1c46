//! Evaluation suite: quality proxies, statistics, PCA probing, RT60
//! correlation, teleportation accuracy, disentanglement scoring, and the
//! downsampling ablation.

mod stats;

pub use stats::{pearson, spearman, welch_t_test};
