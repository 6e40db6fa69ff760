//! Command-line front end with javah-style flags.

use std::fs;
use std::path::{Path, PathBuf};

use log::info;
use thiserror::Error;

use crate::classfile::{load_fixture_model, read_type_model, TypeUniverse};
use crate::codegen::{
    emit_header, filter_rename, parse_rename_rules, plan_class, EmitText, RenameError,
    RenameRules, SUPPORT_HEADER, SUPPORT_HEADER_NAME,
};
use crate::jvmtypes::header_name;
use crate::options::{GenOptions, VisibilityThreshold};
use crate::typemodel::{dependency_closure, direct_dependencies, resolve_with, TypeModelError};

pub const USAGE: &str = "\
usage: cwj-gen [options] <class>...
  -public | -protected | -private   member visibility threshold (default -protected)
  -thin                             jtypes, arrays and class references only
  -r                                also generate every header the classes need
  -d <dir>                          output directory (default .)
  -classpath <path>                 ':'-separated directories, .class files and fixtures
  --cache-final-instance            cache final instance fields in Jtypes
  --direct-native                   add members calling native methods' Java_ functions
  --rename <file>                   identifier renaming rules applied to the output
  --word-width <bits>               bits per final-instance validity word (default 32)
  --placeholder <class>             treat an interface as a placeholder
";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Load { path: PathBuf, message: String },
    #[error(transparent)]
    Model(#[from] TypeModelError),
    #[error("{header} is needed but neither generated nor in the output directory; rerun with -r")]
    MissingDependency { header: String },
    #[error("{path}: {source}")]
    Rename { path: PathBuf, source: RenameError },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_owned(),
        source,
    }
}

pub fn parse_args(args: &[String]) -> Result<GenOptions, CliError> {
    let mut opts = GenOptions::default();
    let mut it = args.iter();
    let value = |flag: &str, it: &mut std::slice::Iter<String>| {
        it.next()
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("{flag} needs a value")))
    };
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "-public" => opts.visibility = VisibilityThreshold::Public,
            "-protected" => opts.visibility = VisibilityThreshold::Protected,
            "-private" => opts.visibility = VisibilityThreshold::Private,
            "-thin" => opts.thin = true,
            "-r" => opts.recursive = true,
            "-d" => opts.out_dir = PathBuf::from(value(arg, &mut it)?),
            "-classpath" | "-cp" => opts
                .classpath
                .extend(value(arg, &mut it)?.split(':').filter(|s| !s.is_empty()).map(PathBuf::from)),
            "--cache-final-instance" => opts.cache_final_instance = true,
            "--direct-native" => opts.direct_native = true,
            "--rename" => opts.rename_file = Some(PathBuf::from(value(arg, &mut it)?)),
            "--word-width" => {
                let v = value(arg, &mut it)?;
                opts.word_width = v
                    .parse()
                    .ok()
                    .filter(|w| (1..=64).contains(w))
                    .ok_or_else(|| CliError::Usage(format!("bad word width {v}")))?;
            }
            "--placeholder" => opts.forced_placeholders.push(value(arg, &mut it)?),
            "-h" | "-help" | "--help" => return Err(CliError::Usage(USAGE.to_owned())),
            flag if flag.starts_with('-') => {
                return Err(CliError::Usage(format!("unknown option {flag}")))
            }
            class => opts.classes.push(class.to_owned()),
        }
    }
    if opts.classes.is_empty() {
        return Err(CliError::Usage("no classes named".to_owned()));
    }
    if opts.classpath.is_empty() {
        opts.classpath.push(PathBuf::from("."));
    }
    Ok(opts)
}

fn load_file(path: &Path, universe: &mut TypeUniverse) -> Result<(), CliError> {
    let load_err = |message: String| CliError::Load {
        path: path.to_owned(),
        message,
    };
    if path.extension().is_some_and(|e| e == "class") {
        let bytes = fs::read(path).map_err(io_err(path))?;
        let model = read_type_model(&bytes).map_err(|e| load_err(e.to_string()))?;
        universe.insert(model);
    } else {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        for model in load_fixture_model(&text).map_err(|e| load_err(e.to_string()))? {
            universe.insert(model);
        }
    }
    Ok(())
}

fn collect_dir(dir: &Path, out: &mut Vec<PathBuf>) -> Result<(), CliError> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io_err(dir))?;
    entries.sort();
    for p in entries {
        if p.is_dir() {
            collect_dir(&p, out)?;
        } else if p
            .extension()
            .is_some_and(|e| e == "class" || e == "fixture")
        {
            out.push(p);
        }
    }
    Ok(())
}

/// Loads every class file and fixture the classpath names. Later entries
/// replace earlier ones of the same class.
pub fn load_universe(classpath: &[PathBuf]) -> Result<TypeUniverse, CliError> {
    let mut universe = TypeUniverse::new();
    for entry in classpath {
        if entry.is_dir() {
            let mut files = Vec::new();
            collect_dir(entry, &mut files)?;
            for f in files {
                load_file(&f, &mut universe)?;
            }
        } else {
            load_file(entry, &mut universe)?;
        }
    }
    Ok(universe)
}

/// Generates every file a run writes, ordered by name, without touching
/// the file system.
pub fn generate(
    universe: &TypeUniverse,
    options: &GenOptions,
    rules: &RenameRules,
) -> Result<Vec<EmitText>, CliError> {
    let closure = dependency_closure(universe, &options.classes, options)?;
    let mut files = vec![EmitText {
        header_name: SUPPORT_HEADER_NAME.to_owned(),
        body: SUPPORT_HEADER.to_owned(),
    }];
    for entry in &closure {
        if !options.recursive && !options.classes.contains(&entry.name) {
            continue;
        }
        let resolved = resolve_with(universe, &entry.name, &options.forced_placeholders)?;
        let plan = plan_class(universe, &resolved, entry.generation, options);
        let mut text = emit_header(&plan);
        text.body = filter_rename(&text.body, rules);
        files.push(text);
    }
    files.sort_by(|a, b| a.header_name.cmp(&b.header_name));
    Ok(files)
}

pub fn execute(options: &GenOptions) -> Result<Vec<PathBuf>, CliError> {
    let universe = load_universe(&options.classpath)?;
    let rules = match &options.rename_file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            parse_rename_rules(&text).map_err(|source| CliError::Rename {
                path: path.clone(),
                source,
            })?
        }
        None => RenameRules::new(),
    };
    let files = generate(&universe, options, &rules)?;
    if !options.recursive {
        let closure = dependency_closure(&universe, &options.classes, options)?;
        for entry in closure.iter().filter(|e| options.classes.contains(&e.name)) {
            let model = universe.get(&entry.name).expect("closure entries resolve");
            for (dep, _) in direct_dependencies(model, entry.generation, options) {
                let header = header_name(&dep);
                if !options.classes.contains(&dep) && !options.out_dir.join(&header).exists() {
                    return Err(CliError::MissingDependency { header });
                }
            }
        }
    }
    fs::create_dir_all(&options.out_dir).map_err(io_err(&options.out_dir))?;
    let mut written = Vec::new();
    for f in files {
        let path = options.out_dir.join(&f.header_name);
        fs::write(&path, &f.body).map_err(io_err(&path))?;
        info!("wrote {}", path.display());
        written.push(path);
    }
    Ok(written)
}

/// Runs the tool on `args` (without the program name) and returns the
/// process exit code.
pub fn run(args: &[String]) -> i32 {
    let result = parse_args(args).and_then(|opts| execute(&opts));
    match result {
        Ok(_) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("cwj-gen: {msg}");
            if !msg.starts_with("usage:") {
                eprint!("{USAGE}");
            }
            2
        }
        Err(e) => {
            eprintln!("cwj-gen: {e}");
            e.exit_code()
        }
    }
}
