pub mod classfile;
pub mod jvmtypes;
pub mod options;
pub mod typemodel;
pub mod codegen;
pub mod cli;
pub mod cachesim;
