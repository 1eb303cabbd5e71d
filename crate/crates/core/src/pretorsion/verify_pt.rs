//! PT axiom suite (placeholder while the module is under construction).
