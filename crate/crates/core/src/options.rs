use std::path::PathBuf;

use crate::classfile::Visibility;

/// Cumulative visibility threshold, as with javah's `-public`,
/// `-protected` and `-private`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VisibilityThreshold {
    Public,
    #[default]
    Protected,
    Private,
}

impl VisibilityThreshold {
    pub fn admits(self, v: Visibility) -> bool {
        match self {
            VisibilityThreshold::Public => v == Visibility::Public,
            VisibilityThreshold::Protected => v <= Visibility::Protected,
            VisibilityThreshold::Private => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenOptions {
    pub visibility: VisibilityThreshold,
    pub thin: bool,
    pub recursive: bool,
    pub out_dir: PathBuf,
    /// Qualified names of the classes to generate.
    pub classes: Vec<String>,
    /// Directories, `.class` files and fixture documents.
    pub classpath: Vec<PathBuf>,
    /// Cache final instance fields in Jtypes. Relies on telling local
    /// references apart from global ones, which JNI does not standardize.
    pub cache_final_instance: bool,
    pub direct_native: bool,
    pub rename_file: Option<PathBuf>,
    /// Bits per final-instance validity word.
    pub word_width: u32,
    /// Validity words a Jtype may carry before caching is abandoned.
    pub max_validity_words: u32,
    /// Interfaces to treat as placeholders even when they declare members.
    pub forced_placeholders: Vec<String>,
}

impl Default for GenOptions {
    fn default() -> Self {
        Self {
            visibility: VisibilityThreshold::default(),
            thin: false,
            recursive: false,
            out_dir: PathBuf::from("."),
            classes: Vec::new(),
            classpath: Vec::new(),
            cache_final_instance: false,
            direct_native: false,
            rename_file: None,
            word_width: 32,
            max_validity_words: 1,
            forced_placeholders: Vec::new(),
        }
    }
}

impl GenOptions {
    /// Options that admit every member, as the simulator needs.
    pub fn all_members() -> Self {
        Self {
            visibility: VisibilityThreshold::Private,
            ..Self::default()
        }
    }
}
