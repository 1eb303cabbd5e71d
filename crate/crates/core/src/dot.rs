//! DOT diagram emission (placeholder while the module is under construction).
