"""Writes the synthetic truth pool and the two API catalogs it is drawn from.

Each truth shares topic nouns between the source and target descriptions;
generic words ("returns", "value", "object") are spread across all entries.
"""
import pathlib

HERE = pathlib.Path(__file__).parent

# (source signature, source description, target signature, target description)
ONE_TO_ONE = [
    ("get(int)", "Get the long value stored at the index position.",
     "getAsLong()", "Convenience method returning the element as a primitive long value at this index position."),
    ("toJsonString()", "Convert the map to serialized JSON text.",
     "toString()", "Returns the serialized JSON text of this element."),
    ("containsKey(Object)", "Returns true if the member key is present.",
     "has(String)", "Check whether a member key with this name is present."),
    ("getInt(String)", "Get the integer number associated with a key.",
     "getAsInt()", "Convenience method returning the element as an integer number."),
    ("getString(String)", "Get the string text associated with a key.",
     "getAsString()", "Convenience method returning the element as string text."),
    ("isNull(String)", "Determine if the entry holds a null marker.",
     "isJsonNull()", "Check if this element is the null marker."),
    ("put(String,Object)", "Put a property pair in the object.",
     "addProperty(String,String)", "Add a primitive property pair to the object."),
    ("setConnectionTimeout(int)", "Sets the socket connection timeout in milliseconds.",
     "connectTimeout(long,TimeUnit)", "Configures the socket connection timeout for new connections."),
    ("executeMethod(HttpMethod)", "Executes the given HTTP request and waits for the response status.",
     "execute()", "Invokes the HTTP request immediately and blocks until the response status is available."),
    ("getResponseBodyAsString()", "Returns the response body decoded as character content.",
     "string()", "Returns the response body as character content, decoded with the charset."),
    ("addRequestHeader(String,String)", "Adds the specified request header field.",
     "addHeader(String,String)", "Adds a request header field with the name and value."),
    ("getStatusCode()", "Returns the numeric status code of the reply line.",
     "code()", "Returns the numeric status code of the reply line."),
    ("releaseConnection()", "Releases the pooled socket back to the manager.",
     "close()", "Closes the body and returns the pooled socket to the manager."),
    ("isDebugEnabled()", "Is debug logging enabled for this category?",
     "isDebugEnabled(Marker)", "Is the logger instance enabled for debug logging with this marker?"),
    ("getLogger(Class)", "Retrieve a named logger instance for the class category.",
     "getLogger(String)", "Return a logger instance named after the category."),
    ("warn(Object)", "Log a warning message with the warn level.",
     "warn(String)", "Log a message at the warn level as a warning."),
    ("parse(String)", "Parses the text into a calendar date using the pattern.",
     "parse(CharSequence)", "Obtains a calendar date from the text using the pattern."),
    ("format(Date)", "Formats the calendar date into a date-time string.",
     "format(TemporalAccessor)", "Formats a date-time accessor into a date-time string."),
    ("getTime()", "Returns the milliseconds since the epoch for this instant.",
     "toEpochMilli()", "Converts this instant to milliseconds since the epoch."),
    ("newArrayList()", "Creates a mutable empty list backed by an array.",
     "arrayList()", "Creates an empty mutable list backed by a resizable array."),
    ("isBlank(String)", "Checks if the character sequence is whitespace only or empty.",
     "isNullOrWhitespace(String)", "Returns true if the character sequence is empty or whitespace only."),
    ("join(Iterable,String)", "Joins the elements of the iterable with the separator into one string.",
     "join(CharSequence,Iterable)", "Joins iterable elements into a single string using the separator."),
    ("readFileToString(File)", "Reads the file contents into a string using the default encoding.",
     "readString(Path)", "Reads all content from a file into a string, decoding with the encoding."),
    ("copyFile(File,File)", "Copies a file to a new destination location preserving the modification date.",
     "copy(Path,Path,CopyOption[])", "Copy a file to a target destination location."),
    ("deleteDirectory(File)", "Deletes a directory tree recursively.",
     "deleteRecursively(Path)", "Removes the directory tree recursively, including every nested entry."),
    ("encodeBase64String(byte[])", "Encodes binary data using the base64 alphabet into a string.",
     "encodeToString(byte[])", "Encodes the byte array into a base64 alphabet string."),
    ("decodeBase64(String)", "Decodes a base64 alphabet string into octets.",
     "decode(String)", "Decodes a base64 alphabet encoded string into a newly allocated byte array of octets."),
    ("md5Hex(String)", "Calculates the MD5 digest and returns it as a hex string.",
     "hashString(CharSequence,Charset)", "Computes the MD5 digest of the characters, rendered as hex."),
    ("assertEquals(Object,Object)", "Asserts that two objects are equal under the equality check.",
     "assertThat(Object,Matcher)", "Asserts that the actual object satisfies the matcher equality check."),
    ("createMock(Class)", "Creates a mock collaborator for the given interface.",
     "mock(Class)", "Creates a mock collaborator of the given interface."),
    ("expect(Object)", "Records an expected stubbed call on the mock.",
     "when(Object)", "Enables stubbed calls so the mock returns an expected answer."),
    ("fromJson(String,Class)", "Deserializes the payload into an instance of the target type.",
     "readValue(String,Class)", "Deserialize payload content into an instance of the target type."),
]

ONE_TO_MANY = [
    ("setProxy(String,int)", "Configures the forward proxy host and proxy port used for tunnelling.",
     [("proxyHost(String)", "Sets the forward proxy host used for tunnelling."),
      ("proxyPort(int)", "Sets the forward proxy port used for tunnelling.")]),
    ("setCredentials(String,String)", "Stores the basic authentication username and password secret.",
     [("username(String)", "Sets the basic authentication username."),
      ("password(String)", "Sets the basic authentication password secret.")]),
    ("resize(int,int)", "Scales the raster image to the requested width and height in pixels.",
     [("scaleWidth(int)", "Scales the raster image width in pixels."),
      ("scaleHeight(int)", "Scales the raster image height in pixels.")]),
    ("setRange(int,int)", "Limits the slider bounds to a minimum floor and a maximum ceiling.",
     [("minimum(int)", "Sets the slider minimum floor bound."),
      ("maximum(int)", "Sets the slider maximum ceiling bound.")]),
    ("openSession()", "Opens a database session bound to a fresh transaction context.",
     [("createEntityManager()", "Creates an entity manager for the database session."),
      ("beginTransaction()", "Begins a fresh transaction context on the database.")]),
    ("sendMail(Message)", "Transmits the mail envelope through the smtp relay transport.",
     [("connectTransport()", "Connects the smtp relay transport."),
      ("sendEnvelope(Envelope)", "Sends the mail envelope over the transport.")]),
    ("serialize(Object,File)", "Writes the object graph as a binary stream into the archive file.",
     [("openStream(File)", "Opens a binary stream on the archive file."),
      ("writeGraph(Object)", "Writes the object graph into the binary stream.")]),
    ("compileTemplate(String)", "Parses the markup template source and builds the render tree.",
     [("parseMarkup(String)", "Parses markup template source."),
      ("buildTree(Document)", "Builds the render tree for a parsed template.")]),
]

MANY_TO_MANY = [
    [("beginBatch()", "Starts a bulk insert batch on the statement.", "startBulk()", "Starts a bulk insert batch."),
     ("flushBatch()", "Flushes queued rows of the bulk batch to the table.", "flushRows()", "Flushes queued rows to the table.")],
    [("lockRead()", "Acquires the shared reader lock on the guarded resource.", "acquireShared()", "Acquires the shared reader lock."),
     ("unlockRead()", "Releases the shared reader lock on the guarded resource.", "releaseShared()", "Releases the shared reader lock.")],
    [("pushMatrix()", "Saves the current transform matrix on the graphics stack.", "saveTransform()", "Saves the transform matrix on the graphics stack."),
     ("popMatrix()", "Restores the transform matrix from the graphics stack.", "restoreTransform()", "Restores the transform matrix from the graphics stack.")],
    [("startTimer(String)", "Starts the named stopwatch timer for latency metrics.", "timerStart(String)", "Starts a latency metrics stopwatch."),
     ("stopTimer(String)", "Stops the stopwatch timer and records elapsed latency.", "timerRecord(String)", "Records elapsed latency of the stopwatch.")],
    [("openZip(File)", "Opens the compressed zip archive for entry extraction.", "zipOpen(Path)", "Opens a compressed zip archive."),
     ("nextZipEntry()", "Advances to the following compressed zip entry.", "entryNext()", "Moves to the following zip entry.")],
    [("bindSocket(int)", "Binds the listening server socket to the port.", "listen(int)", "Listens on the server socket port."),
     ("acceptClient()", "Accepts an incoming client handshake on the listening socket.", "awaitPeer()", "Waits for an incoming client handshake.")],
    [("subscribeTopic(String)", "Subscribes the consumer to the broker topic channel.", "subscribe(Collection)", "Subscribes to broker topic channels."),
     ("pollMessages(long)", "Polls the broker queue for pending message records.", "poll(Duration)", "Fetches pending message records from the broker queue.")],
    [("initCipher(Key)", "Initializes the symmetric cipher engine with the secret key.", "cipherInit(Key)", "Initializes a symmetric cipher with a secret key."),
     ("finishCipher(byte[])", "Completes the encryption block padding of the cipher.", "doFinalBlock(byte[])", "Finishes the encryption block padding.")],
]


def encoding(sig):
    name, params = sig.split("(", 1)
    params = params[:-1]
    depth = 0
    count = 1 if params else 0
    for ch in params:
        if ch in "<(":
            depth += 1
        elif ch in ">)":
            depth -= 1
        elif ch == "," and depth == 0:
            count += 1
    return f"{name}/{count}"


def main():
    source, target, rows = [], [], []
    for s, sd, t, td in ONE_TO_ONE:
        source.append((s, sd))
        target.append((t, td))
        rows.append((encoding(s), encoding(t)))
    for s, sd, ts in ONE_TO_MANY:
        source.append((s, sd))
        target.extend(ts)
        rows.append((encoding(s), ",".join(encoding(t) for t, _ in ts)))
    for group in MANY_TO_MANY:
        for s, sd, t, td in group:
            source.append((s, sd))
            target.append((t, td))
        rows.append((",".join(encoding(g[0]) for g in group),
                     ",".join(encoding(g[2]) for g in group)))

    src_names = [encoding(s) for s, _ in source]
    tgt_names = [encoding(t) for t, _ in target]
    assert len(set(src_names)) == len(src_names), "source methods must be unique"
    assert len(set(tgt_names)) == len(tgt_names), "target methods must be unique"

    with open(HERE / "synthetic_truth.csv", "w") as f:
        f.write("removed;added\n")
        for r, a in rows:
            f.write(f"{r};{a}\n")
    with open(HERE / "synthetic_source.catalog", "w") as f:
        f.write("# synthetic source library\n")
        for s, d in source:
            f.write(f"{s}|{d}\n")
    with open(HERE / "synthetic_target.catalog", "w") as f:
        f.write("# synthetic target library\n")
        for t, d in target:
            f.write(f"{t}|{d}\n")


if __name__ == "__main__":
    main()
