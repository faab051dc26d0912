pub mod cyclotomic;
