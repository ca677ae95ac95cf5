use std::collections::VecDeque;
use std::io::{self, Read, Write};
use std::net::TcpStream;
use std::sync::{Arc, Condvar, Mutex};
use std::time::{Duration, Instant};

use super::frame::{decode_message, encode_message, FrameError, Message, HEADER_LEN, MAX_PAYLOAD};
use super::WireError;

/// A reliable, ordered, bidirectional byte stream with a read timeout.
pub trait Duplex: Read + Write + Send {
    fn set_read_timeout(&mut self, timeout: Option<Duration>) -> io::Result<()>;
}

impl Duplex for TcpStream {
    fn set_read_timeout(&mut self, timeout: Option<Duration>) -> io::Result<()> {
        TcpStream::set_read_timeout(self, timeout)
    }
}

impl<T: Duplex + ?Sized> Duplex for &mut T {
    fn set_read_timeout(&mut self, timeout: Option<Duration>) -> io::Result<()> {
        (**self).set_read_timeout(timeout)
    }
}

#[derive(Default)]
struct PipeState {
    buf: VecDeque<u8>,
    writer_closed: bool,
    reader_closed: bool,
}

#[derive(Default)]
struct Pipe {
    state: Mutex<PipeState>,
    ready: Condvar,
}

/// One end of an in-memory duplex byte pipe. Dropping an end closes both
/// directions for the peer: its reads see end-of-stream once drained, its
/// writes fail with `BrokenPipe`.
pub struct LoopbackStream {
    rx: Arc<Pipe>,
    tx: Arc<Pipe>,
    timeout: Option<Duration>,
}

/// A connected pair of loopback ends.
pub fn loopback_pair() -> (LoopbackStream, LoopbackStream) {
    let a = Arc::new(Pipe::default());
    let b = Arc::new(Pipe::default());
    (
        LoopbackStream { rx: a.clone(), tx: b.clone(), timeout: None },
        LoopbackStream { rx: b, tx: a, timeout: None },
    )
}

impl Read for LoopbackStream {
    fn read(&mut self, out: &mut [u8]) -> io::Result<usize> {
        if out.is_empty() {
            return Ok(0);
        }
        let deadline = self.timeout.map(|t| Instant::now() + t);
        let mut st = self.rx.state.lock().expect("pipe lock poisoned");
        loop {
            if !st.buf.is_empty() {
                let n = out.len().min(st.buf.len());
                for (slot, byte) in out.iter_mut().zip(st.buf.drain(..n)) {
                    *slot = byte;
                }
                return Ok(n);
            }
            if st.writer_closed {
                return Ok(0);
            }
            st = match deadline {
                None => self.rx.ready.wait(st).expect("pipe lock poisoned"),
                Some(d) => {
                    let now = Instant::now();
                    if now >= d {
                        return Err(io::Error::new(io::ErrorKind::TimedOut, "loopback read timed out"));
                    }
                    self.rx.ready.wait_timeout(st, d - now).expect("pipe lock poisoned").0
                }
            };
        }
    }
}

impl Write for LoopbackStream {
    fn write(&mut self, data: &[u8]) -> io::Result<usize> {
        let mut st = self.tx.state.lock().expect("pipe lock poisoned");
        if st.reader_closed {
            return Err(io::Error::new(io::ErrorKind::BrokenPipe, "peer closed"));
        }
        st.buf.extend(data);
        self.tx.ready.notify_all();
        Ok(data.len())
    }

    fn flush(&mut self) -> io::Result<()> {
        Ok(())
    }
}

impl Drop for LoopbackStream {
    fn drop(&mut self) {
        if let Ok(mut st) = self.tx.state.lock() {
            st.writer_closed = true;
            self.tx.ready.notify_all();
        }
        if let Ok(mut st) = self.rx.state.lock() {
            st.reader_closed = true;
        }
    }
}

impl Duplex for LoopbackStream {
    fn set_read_timeout(&mut self, timeout: Option<Duration>) -> io::Result<()> {
        self.timeout = timeout;
        Ok(())
    }
}

/// Shared views of the bytes that passed through a [`TappedStream`].
#[derive(Clone, Default)]
pub struct Tap {
    written: Arc<Mutex<Vec<u8>>>,
    read: Arc<Mutex<Vec<u8>>>,
}

impl Tap {
    pub fn written(&self) -> Vec<u8> {
        self.written.lock().expect("tap lock poisoned").clone()
    }

    pub fn read(&self) -> Vec<u8> {
        self.read.lock().expect("tap lock poisoned").clone()
    }
}

/// Wraps a stream and records everything written to and read from it.
pub struct TappedStream<T> {
    inner: T,
    tap: Tap,
}

impl<T> TappedStream<T> {
    pub fn new(inner: T) -> (Self, Tap) {
        let tap = Tap::default();
        (TappedStream { inner, tap: tap.clone() }, tap)
    }
}

impl<T: Read> Read for TappedStream<T> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let n = self.inner.read(buf)?;
        self.tap.read.lock().expect("tap lock poisoned").extend_from_slice(&buf[..n]);
        Ok(n)
    }
}

impl<T: Write> Write for TappedStream<T> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.tap.written.lock().expect("tap lock poisoned").extend_from_slice(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

impl<T: Duplex> Duplex for TappedStream<T> {
    fn set_read_timeout(&mut self, timeout: Option<Duration>) -> io::Result<()> {
        self.inner.set_read_timeout(timeout)
    }
}

/// Message-level reader/writer over a byte stream.
pub struct FramedStream<T> {
    inner: T,
    buf: Vec<u8>,
}

impl<T: Duplex> FramedStream<T> {
    pub fn new(inner: T) -> Self {
        FramedStream { inner, buf: Vec::new() }
    }

    pub fn set_timeout(&mut self, timeout: Option<Duration>) -> Result<(), WireError> {
        self.inner.set_read_timeout(timeout).map_err(WireError::from_io)
    }

    pub fn send(&mut self, m: &Message) -> Result<(), WireError> {
        let bytes = encode_message(m)?;
        self.inner.write_all(&bytes).map_err(WireError::from_io)?;
        self.inner.flush().map_err(WireError::from_io)
    }

    pub fn recv(&mut self) -> Result<Message, WireError> {
        let mut chunk = [0u8; 4096];
        loop {
            match decode_message(&self.buf) {
                Ok((m, used)) => {
                    self.buf.drain(..used);
                    return Ok(m);
                }
                Err(FrameError::Truncated { .. }) => {}
                Err(e) => return Err(e.into()),
            }
            if self.buf.len() >= HEADER_LEN {
                let len = u32::from_be_bytes([self.buf[1], self.buf[2], self.buf[3], self.buf[4]]) as usize;
                if len > MAX_PAYLOAD {
                    return Err(FrameError::PayloadTooLarge(len).into());
                }
            }
            let n = self.inner.read(&mut chunk).map_err(WireError::from_io)?;
            if n == 0 {
                return Err(WireError::TransportClosed);
            }
            self.buf.extend_from_slice(&chunk[..n]);
        }
    }

    pub fn into_inner(self) -> T {
        self.inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::Challenge;
    use std::thread;

    #[test]
    fn loopback_carries_bytes_both_ways() {
        let (mut a, mut b) = loopback_pair();
        a.write_all(b"ping").unwrap();
        let mut buf = [0u8; 4];
        b.read_exact(&mut buf).unwrap();
        assert_eq!(&buf, b"ping");
        b.write_all(b"pong").unwrap();
        a.read_exact(&mut buf).unwrap();
        assert_eq!(&buf, b"pong");
    }

    #[test]
    fn drop_closes_peer() {
        let (mut a, b) = loopback_pair();
        drop(b);
        let mut buf = [0u8; 1];
        assert_eq!(a.read(&mut buf).unwrap(), 0);
        assert_eq!(a.write(b"x").unwrap_err().kind(), io::ErrorKind::BrokenPipe);
    }

    #[test]
    fn read_timeout_fires() {
        let (mut a, _b) = loopback_pair();
        a.set_read_timeout(Some(Duration::from_millis(20))).unwrap();
        let mut buf = [0u8; 1];
        assert_eq!(a.read(&mut buf).unwrap_err().kind(), io::ErrorKind::TimedOut);
    }

    #[test]
    fn framed_stream_across_threads() {
        let (a, b) = loopback_pair();
        let t = thread::spawn(move || {
            let mut f = FramedStream::new(b);
            let m = f.recv().unwrap();
            f.send(&m).unwrap();
        });
        let mut f = FramedStream::new(a);
        f.send(&Message::challenge(Challenge::One)).unwrap();
        assert_eq!(f.recv().unwrap().as_challenge(), Some(Challenge::One));
        t.join().unwrap();
        assert!(matches!(f.recv(), Err(WireError::TransportClosed)));
    }

    #[test]
    fn oversized_length_is_refused() {
        let (a, mut b) = loopback_pair();
        b.write_all(&[0x03, 0xFF, 0xFF, 0xFF, 0xFF]).unwrap();
        let mut f = FramedStream::new(a);
        assert!(matches!(
            f.recv(),
            Err(WireError::Frame(FrameError::PayloadTooLarge(_)))
        ));
    }

    #[test]
    fn tap_records_traffic() {
        let (a, mut b) = loopback_pair();
        let (mut tapped, tap) = TappedStream::new(a);
        tapped.write_all(b"abc").unwrap();
        b.write_all(b"z").unwrap();
        let mut one = [0u8; 1];
        tapped.read_exact(&mut one).unwrap();
        assert_eq!(tap.written(), b"abc");
        assert_eq!(tap.read(), b"z");
    }
}
