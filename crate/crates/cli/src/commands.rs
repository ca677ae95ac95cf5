use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::net::{SocketAddr, TcpListener, TcpStream, ToSocketAddrs};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::thread;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use zkaction::adversary::measure_forgery_rate;
use zkaction::sigma::{simulate_transcript, RngChallenges};
use zkaction::wire::{loopback_pair, prover_endpoint, verifier_endpoint};
use zkaction::{
    AnyKeyPair, AnyStatement, Challenge, ColoringScheme, GraphIso, KeyPair, ModExp, Scheme,
    SessionConfig, StatementPolicy, SubgraphIso, Verdict, WireError,
};

use crate::args::{AttackArgs, KeygenArgs, ProveArgs, SessionArgs, SimulateArgs, VerifyArgs};

pub enum CliError {
    /// Bad arguments or unusable key material: exit 2.
    Usage(String),
    /// Protocol or transport failure: exit 3.
    Wire(WireError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Wire(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Wire(e) => write!(f, "session failed: {e}"),
        }
    }
}

impl From<WireError> for CliError {
    fn from(e: WireError) -> Self {
        CliError::Wire(e)
    }
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Exit status for a finished session.
pub fn verdict_code(v: Verdict) -> u8 {
    if v.is_accept() {
        0
    } else {
        1
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    if v.is_accept() {
        "accept"
    } else {
        "reject"
    }
}

fn rng_for(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_keypair(path: &Path) -> Result<AnyKeyPair, CliError> {
    AnyKeyPair::from_json(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_statement(path: &Path) -> Result<AnyStatement, CliError> {
    AnyStatement::from_json(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

// Runs `$body` with `$scheme` bound to the scheme value and `$kp` to the
// typed key pair.
macro_rules! with_keypair {
    ($any:expr, |$scheme:ident, $kp:ident| $body:expr) => {
        match $any {
            AnyKeyPair::GraphIso($kp) => {
                let $scheme = &GraphIso;
                $body
            }
            AnyKeyPair::SubgraphIso($kp) => {
                let $scheme = &SubgraphIso::default();
                $body
            }
            AnyKeyPair::Coloring($kp) => {
                let $scheme = &ColoringScheme;
                $body
            }
            AnyKeyPair::ModExp($kp) => {
                let $scheme = &ModExp;
                $body
            }
        }
    };
}

macro_rules! with_statement {
    ($any:expr, |$scheme:ident, $st:ident| $body:expr) => {
        match $any {
            AnyStatement::GraphIso($st) => {
                let $scheme = &GraphIso;
                $body
            }
            AnyStatement::SubgraphIso($st) => {
                let $scheme = &SubgraphIso::default();
                $body
            }
            AnyStatement::Coloring($st) => {
                let $scheme = &ColoringScheme;
                $body
            }
            AnyStatement::ModExp($st) => {
                let $scheme = &ModExp;
                $body
            }
        }
    };
}

pub fn keygen(args: KeygenArgs) -> Result<u8, CliError> {
    use zkaction::SchemeId::*;
    let mut rng = rng_for(args.seed);
    let kp: AnyKeyPair = match args.scheme {
        GraphIso => zkaction::GraphIso
            .keygen(args.n.unwrap_or(16), args.edge_prob, &mut rng)
            .map_err(usage)?
            .into(),
        SubgraphIso => {
            let n = args.n.unwrap_or(8);
            let host = args.host.unwrap_or(2 * n);
            zkaction::SubgraphIso::default()
                .keygen(n, host, &mut rng)
                .map_err(usage)?
                .into()
        }
        Coloring => ColoringScheme
            .keygen(args.n.unwrap_or(16), args.k, &mut rng)
            .map_err(usage)?
            .into(),
        ModExp => {
            let p: BigUint = args
                .p
                .parse()
                .map_err(|_| usage(format!("--p: not a decimal integer: {}", args.p)))?;
            zkaction::ModExp.keygen(&p, &mut rng).map_err(usage)?.into()
        }
    };
    // seeded runs must be byte-for-byte reproducible
    let created = match args.seed {
        Some(_) => 0,
        None => SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    let pub_path = with_suffix(&args.out, ".pub");
    let key_path = with_suffix(&args.out, ".key");
    fs::write(&pub_path, kp.statement().to_public_json(created))
        .map_err(|e| usage(format!("cannot write {}: {e}", pub_path.display())))?;
    fs::write(&key_path, kp.to_private_json(created))
        .map_err(|e| usage(format!("cannot write {}: {e}", key_path.display())))?;
    println!("wrote {} and {}", pub_path.display(), key_path.display());
    Ok(0)
}

pub fn prove(args: ProveArgs) -> Result<u8, CliError> {
    let any = load_keypair(&args.key)?;
    let addrs: Vec<SocketAddr> = args
        .verifier
        .to_socket_addrs()
        .map_err(|e| usage(format!("--verifier {}: {e}", args.verifier)))?
        .collect();
    let timeout = Duration::from_millis(args.timeout_ms.max(1));
    let mut last = io::Error::new(io::ErrorKind::NotFound, "address resolved to nothing");
    let mut stream = None;
    for a in &addrs {
        match TcpStream::connect_timeout(a, timeout) {
            Ok(s) => {
                stream = Some(s);
                break;
            }
            Err(e) => last = e,
        }
    }
    let stream = stream.ok_or(CliError::Wire(WireError::Io(last)))?;
    let _ = stream.set_nodelay(true);
    let mut rng = rng_for(args.run.seed);
    let outcome = with_keypair!(any, |scheme, kp| {
        let cfg = SessionConfig::new(kp_scheme(scheme), args.run.rounds).with_timeout(timeout);
        prover_endpoint(scheme, stream, &kp, &cfg, &mut rng)?
    });
    println!(
        "verdict: {} after {} rounds",
        verdict_word(outcome.verdict),
        outcome.rounds_completed
    );
    Ok(verdict_code(outcome.verdict))
}

fn kp_scheme<S: Scheme>(_: &S) -> zkaction::SchemeId {
    S::ID
}

fn bind(listen: &str) -> Result<TcpListener, CliError> {
    let addr = if listen.contains(':') {
        listen.to_string()
    } else {
        format!("127.0.0.1:{listen}")
    };
    TcpListener::bind(&addr).map_err(|e| usage(format!("cannot listen on {addr}: {e}")))
}

fn serve_one<S: Scheme>(
    scheme: &S,
    stream: TcpStream,
    statement: &S::Statement,
    cfg: &SessionConfig,
    rng: ChaCha20Rng,
) -> Result<Verdict, WireError> {
    let _ = stream.set_nodelay(true);
    let policy = StatementPolicy::Pinned(statement.clone());
    let out = verifier_endpoint(scheme, stream, &policy, cfg, &mut RngChallenges(rng))?;
    for (round, why) in &out.rejections {
        eprintln!("round {round} rejected: {why}");
    }
    Ok(out.verdict)
}

fn verify_typed<S: Scheme + Clone + 'static>(
    scheme: &S,
    statement: S::Statement,
    args: &VerifyArgs,
) -> Result<u8, CliError>
where
    S::Statement: 'static,
{
    let listener = bind(&args.listen)?;
    let local = listener.local_addr().map_err(usage)?;
    println!("listening on {local}");
    let _ = io::stdout().flush();
    let cfg = SessionConfig::new(S::ID, args.run.rounds)
        .with_timeout(Duration::from_millis(args.timeout_ms.max(1)));
    // connection i draws its challenges from stream i of the seeded generator
    let seed_base = args.run.seed;
    let session_rng = move |i: u64| {
        let mut rng = rng_for(seed_base);
        if seed_base.is_some() {
            rng.set_stream(i);
        }
        rng
    };

    if args.once {
        let (stream, peer) = listener.accept().map_err(|e| CliError::Wire(WireError::Io(e)))?;
        let verdict = serve_one(scheme, stream, &statement, &cfg, session_rng(0))?;
        println!("session from {peer}: {}", verdict_word(verdict));
        return Ok(verdict_code(verdict));
    }

    let statement = Arc::new(statement);
    for (i, conn) in listener.incoming().enumerate() {
        let stream = match conn {
            Ok(s) => s,
            Err(e) => {
                eprintln!("accept failed: {e}");
                continue;
            }
        };
        let peer = stream.peer_addr().map(|a| a.to_string()).unwrap_or_default();
        let (scheme, statement, rng) = (scheme.clone(), statement.clone(), session_rng(i as u64));
        thread::spawn(move || match serve_one(&scheme, stream, &statement, &cfg, rng) {
            Ok(v) => println!("session from {peer}: {}", verdict_word(v)),
            Err(e) => println!("session from {peer}: error: {e}"),
        });
    }
    Ok(0)
}

pub fn verify(args: VerifyArgs) -> Result<u8, CliError> {
    let any = load_statement(&args.public)?;
    with_statement!(any, |scheme, st| verify_typed(scheme, st, &args))
}

fn loopback_session<S: Scheme>(
    scheme: &S,
    kp: KeyPair<S>,
    rounds: u32,
    seed: Option<u64>,
) -> Result<Verdict, CliError> {
    let cfg = SessionConfig::new(S::ID, rounds);
    let mut master = rng_for(seed);
    let mut prover_rng = ChaCha20Rng::from_rng(&mut master).expect("seeding from chacha");
    let verifier_rng = ChaCha20Rng::from_rng(&mut master).expect("seeding from chacha");
    let (a, b) = loopback_pair();
    let policy = StatementPolicy::Pinned(kp.statement.clone());
    let out = thread::scope(|s| {
        let prover = s.spawn(|| prover_endpoint(scheme, a, &kp, &cfg, &mut prover_rng));
        let v = verifier_endpoint(scheme, b, &policy, &cfg, &mut RngChallenges(verifier_rng));
        let p = prover.join().expect("prover thread panicked");
        v.and_then(|v| p.map(|_| v))
    })?;
    for (round, why) in &out.rejections {
        eprintln!("round {round} rejected: {why}");
    }
    Ok(out.verdict)
}

pub fn session(args: SessionArgs) -> Result<u8, CliError> {
    let any = load_keypair(&args.key)?;
    let rounds = args.run.rounds;
    let verdict = with_keypair!(any, |scheme, kp| loopback_session(scheme, kp, rounds, args.run.seed)?);
    println!("verdict: {} after {rounds} rounds", verdict_word(verdict));
    Ok(verdict_code(verdict))
}

pub fn attack(args: AttackArgs) -> Result<u8, CliError> {
    let any = load_statement(&args.public)?;
    let mut rng = rng_for(args.run.seed);
    let rounds = args.run.rounds as usize;
    let report = with_statement!(any, |scheme, st| {
        measure_forgery_rate(scheme, &st, rounds, args.trials, &mut rng).map_err(usage)?
    });
    if args.json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    Ok(0)
}

fn simulate_typed<S: Scheme>(
    scheme: &S,
    st: &S::Statement,
    challenge: Challenge,
    rng: &mut dyn RngCore,
) -> Result<u8, CliError> {
    let record = simulate_transcript(scheme, st, challenge, rng);
    let verifies = scheme
        .decode_commitment(st, &record.commitment)
        .and_then(|c| scheme.decode_response(st, &record.response).map(|r| (c, r)))
        .map(|(c, r)| scheme.verify_round(st, &c, challenge, &r))
        .unwrap_or(false);
    println!("scheme: {}", S::ID);
    println!("commitment: {}", hex::encode(&record.commitment));
    println!("challenge: {}", challenge.bit());
    println!("response: {}", hex::encode(&record.response));
    println!("verifies: {}", if verifies { "yes" } else { "no" });
    Ok(if verifies { 0 } else { 1 })
}

pub fn simulate(args: SimulateArgs) -> Result<u8, CliError> {
    let any = load_statement(&args.public)?;
    let challenge = Challenge::from_bit(args.challenge).map_err(usage)?;
    let mut rng = rng_for(args.seed);
    with_statement!(any, |scheme, st| simulate_typed(scheme, &st, challenge, &mut rng))
}
