//! Decorated simplicial sets, scaled nerves of strict 2-categories, free
//! 2-Cartesian fibrations and cofinality checks.

pub mod anodyne_lifting;
pub mod category;
pub mod corpus;
pub mod cofinality_checker;
pub mod decorated_sset;
pub mod error;
pub mod fixtures;
pub mod free_fibration;
pub mod gray_products;
pub mod homotopy_engine;
pub mod laxlim_calculator;
pub mod strict_two_cat;

pub use error::{Error, Result};
