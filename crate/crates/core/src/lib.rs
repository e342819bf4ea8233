pub mod brpic;
pub mod cochain;
pub mod docs;
pub mod enumerate;
pub mod error;
pub mod extraspecial;
pub mod field;
pub mod forms;
pub mod h3;
pub mod lie;
pub mod matrix;
pub mod stab;
