//! Instance generation, the adversarial sequence, and the end-to-end online
//! experiment with CSV output.

mod adversary;
mod experiment;
mod generate;
mod rng;

pub use adversary::{
    adversarial_sequence, closed_form_loss, construction_comparator, run_adversary, AdversarialRound,
    AdversaryRecord, AdversaryReport,
};
pub use experiment::{
    best_over_rho, csv_string, greedy_restore, run_generated, run_grid, run_online_experiment, summarize,
    write_csv, CellSummary, ExperimentConfig, ExperimentOutput, GridSpec, Method, RoundRecord,
};
pub use generate::{
    generate_instance, instance_stream, load_dataset, max_weight, sample_instance, write_dataset,
};
pub use rng::SeededRng;
