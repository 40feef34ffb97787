//! Subcommand implementations. Each returns the process exit code or an
//! error that maps to one.

use std::fs::File;
use std::io::{self, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use htsig::bench::{self, BenchRecord};
use htsig::hash::{self, HashBackend};
use htsig::{ParamSet, PublicKey, Scheme, SecretKey};
use rand::RngCore;

use crate::error::{exit, CliError, Result};
use crate::format::{self, Kind};

const CHUNK: usize = 64 * 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Bin,
    Hex,
}

pub struct KeygenArgs {
    pub paramset: String,
    pub backend: String,
    pub out: PathBuf,
    pub seed: Option<String>,
    pub format: OutputFormat,
    pub insecure_toy: bool,
}

pub struct SignArgs {
    pub sk: PathBuf,
    /// `None` or `-` reads standard input.
    pub msg: Option<PathBuf>,
    pub out: PathBuf,
    pub randomized: bool,
    pub format: OutputFormat,
}

pub struct VerifyArgs {
    pub pk: PathBuf,
    pub sig: PathBuf,
    pub msg: Option<PathBuf>,
}

pub struct BenchArgs {
    pub paramset: String,
    pub backend: String,
    pub iterations: u32,
    pub csv: Option<PathBuf>,
    pub seed: u64,
}

fn write_file(path: &Path, image: &[u8], fmt: OutputFormat) -> Result<()> {
    let data = match fmt {
        OutputFormat::Bin => image.to_vec(),
        OutputFormat::Hex => format!("{}\n", hex::encode(image)).into_bytes(),
    };
    std::fs::write(path, data).map_err(|e| CliError::io(path, e))
}

fn read_file(path: &Path, want: Kind) -> Result<(format::Header, Vec<u8>)> {
    let raw = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    let image = format::decode_file_bytes(&raw)?;
    let (header, body) = format::decode(&image)?;
    if header.kind != want {
        return Err(CliError::Malformed(format!(
            "{}: expected a {} file, found a {} file",
            path.display(),
            want.describe(),
            header.kind.describe()
        )));
    }
    let body = body.to_vec();
    Ok((header, body))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn keygen(args: &KeygenArgs, stderr: &mut dyn Write) -> Result<i32> {
    let params = ParamSet::lookup(&args.paramset)?;
    if !params.secure && !args.insecure_toy {
        return Err(CliError::Usage(format!(
            "parameter set {} is insecure and for testing only; pass --insecure-toy to use it",
            params.name
        )));
    }
    let scheme = Scheme::new(params, hash::backend(&args.backend)?)?;
    let entropy = match &args.seed {
        Some(text) => {
            let seed = hex::decode(text.trim()).map_err(|e| CliError::Usage(format!("--seed: {e}")))?;
            if seed.len() != 3 * params.n {
                return Err(CliError::Usage(format!(
                    "--seed must be {} bytes ({} hex digits) for {}, got {} bytes",
                    3 * params.n,
                    6 * params.n,
                    params.name,
                    seed.len()
                )));
            }
            let _ = writeln!(
                stderr,
                "WARNING: key derived from a caller-supplied seed. Anyone who knows the seed can sign. Use only for tests."
            );
            seed
        }
        None => {
            let mut e = vec![0u8; 3 * params.n];
            rand::rng().fill_bytes(&mut e);
            e
        }
    };
    let (sk, pk) = scheme.keygen(&entropy)?;
    let backend = scheme.backend().as_ref();
    write_file(
        &with_suffix(&args.out, ".pk"),
        &format::encode(backend, params, Kind::PublicKey, &pk.to_bytes()),
        args.format,
    )?;
    write_file(
        &with_suffix(&args.out, ".sk"),
        &format::encode(backend, params, Kind::SecretKey, &sk.to_bytes()),
        args.format,
    )?;
    Ok(exit::VALID)
}

/// A seekable message source; standard input is spooled to a temporary
/// file first so it can be read twice.
struct Message {
    file: File,
    label: PathBuf,
}

impl Message {
    fn open(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) if p != Path::new("-") => Ok(Self {
                file: File::open(p).map_err(|e| CliError::io(p, e))?,
                label: p.to_path_buf(),
            }),
            _ => {
                let label = PathBuf::from("<stdin>");
                let mut spool = tempfile::tempfile().map_err(|e| CliError::io("<tempfile>", e))?;
                io::copy(&mut io::stdin().lock(), &mut spool).map_err(|e| CliError::io(&label, e))?;
                Ok(Self { file: spool, label })
            }
        }
    }

    fn feed(&mut self, sink: &mut dyn FnMut(&[u8])) -> Result<()> {
        let err = |e| CliError::io(&self.label, e);
        self.file.seek(SeekFrom::Start(0)).map_err(err)?;
        let mut buf = vec![0u8; CHUNK];
        loop {
            let got = self.file.read(&mut buf).map_err(|e| CliError::io(&self.label, e))?;
            if got == 0 {
                return Ok(());
            }
            sink(&buf[..got]);
        }
    }
}

pub fn sign(args: &SignArgs) -> Result<i32> {
    let (header, body) = read_file(&args.sk, Kind::SecretKey)?;
    let p = header.params;
    let sk = SecretKey::from_bytes(p, &body)?;
    let scheme = Scheme::new(p, header.backend.clone())?;
    let mut msg = Message::open(args.msg.as_deref())?;
    let opt_rand = args.randomized.then(|| {
        let mut r = vec![0u8; p.n];
        rand::rng().fill_bytes(&mut r);
        r
    });
    let sig = scheme.sign_stream(&sk, opt_rand.as_deref(), |sink| msg.feed(sink))?;
    let image = format::encode(header.backend.as_ref(), p, Kind::Signature, &sig.to_bytes());
    write_file(&args.out, &image, args.format)?;
    Ok(exit::VALID)
}

pub fn verify(args: &VerifyArgs) -> Result<i32> {
    let (pk_header, pk_body) = read_file(&args.pk, Kind::PublicKey)?;
    let (sig_header, sig_body) = read_file(&args.sig, Kind::Signature)?;
    if !pk_header.same_scheme(&sig_header) {
        return Err(CliError::Malformed(format!(
            "public key is {} / {}, signature is {} / {}",
            pk_header.params.name,
            pk_header.backend.id(),
            sig_header.params.name,
            sig_header.backend.id()
        )));
    }
    let p = pk_header.params;
    let pk = PublicKey::from_bytes(p, &pk_body)?;
    let scheme = Scheme::new(p, pk_header.backend.clone())?;
    let mut msg = Message::open(args.msg.as_deref())?;
    let ok = scheme.verify_stream(&pk, &sig_body, |sink| msg.feed(sink))?;
    Ok(if ok { exit::VALID } else { exit::INVALID })
}

fn select_paramsets(list: &str) -> Result<Vec<&'static ParamSet>> {
    if list == "all" {
        return Ok(htsig::params::secure_sets().collect());
    }
    list.split(',')
        .map(|name| Ok(ParamSet::lookup(name.trim())?))
        .collect()
}

fn select_backends(list: &str) -> Result<Vec<Arc<dyn HashBackend>>> {
    let registry = hash::BackendRegistry::default();
    if list == "all" {
        return Ok(registry.all());
    }
    list.split(',')
        .map(|name| Ok(registry.get(name.trim())?))
        .collect()
}

pub fn bench(args: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let sets = select_paramsets(&args.paramset)?;
    let backends = select_backends(&args.backend)?;
    let progress = |r: &BenchRecord| {
        let _ = writeln!(
            stderr,
            "{:>5} {:<12} {:<6} median {:>12.3} ms  hash_calls {}",
            r.paramset,
            r.backend,
            r.operation.as_str(),
            r.median_ms,
            r.hash_calls
        );
    };
    let records = bench::run_bench_with_progress(&sets, &backends, args.iterations, args.seed, progress)?;
    let report = bench::render_report(&records)?;
    if let Some(path) = &args.csv {
        std::fs::write(path, &report.csv).map_err(|e| CliError::io(path, e))?;
    }
    stdout
        .write_all(report.markdown.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))?;
    Ok(exit::VALID)
}
