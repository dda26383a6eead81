"""
A deterministic synthetic corpus of Markdown bug reports and documentation.

Every line of every generated document carries a hand-assigned label, so the
corpus doubles as a manually annotated validation set. Reports mix English
prose with Java code, stack traces, logs, JSON/XML, shell sessions, build
output and configuration files; some pastes sit in fenced blocks, some do not.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from apps.autolabel.datasets import Dataset, LabeledLine, write_dataset
from apps.autolabel.labels import Label, Provenance

from .documents import Document, DocumentKind
from .loaders import write_issue_export

logger = logging.getLogger(__name__)

NL = Label.NATURAL_LANGUAGE
ART = Label.ARTIFACT

# ───────────────────────────────────
# 1. VOCABULARY
# ───────────────────────────────────

PROJECTS = ("acme-cache", "harbor-sync", "ledger-api", "orbit-ui", "quarry-db", "relay-mq")

PACKAGES = {
    "acme-cache": "com.acme.cache",
    "harbor-sync": "org.harbor.sync",
    "ledger-api": "io.ledger.api",
    "orbit-ui": "dev.orbit.ui",
    "quarry-db": "net.quarry.db",
    "relay-mq": "com.relay.mq",
}

COMPONENTS = (
    "scheduler",
    "cache layer",
    "login page",
    "export wizard",
    "REST client",
    "settings dialog",
    "sync job",
    "plugin loader",
    "search index",
    "upload form",
    "report generator",
    "connection pool",
    "message consumer",
    "admin console",
)

CLASSES = (
    "CacheManager",
    "SyncService",
    "OrderRepository",
    "ExportJob",
    "SessionStore",
    "IndexWriter",
    "PluginRegistry",
    "UploadHandler",
    "ReportBuilder",
    "TokenValidator",
    "ConnectionPool",
    "MessageConsumer",
)

METHODS = (
    "loadEntries",
    "flush",
    "refreshIndex",
    "resolvePath",
    "openSession",
    "parseHeader",
    "scheduleTask",
    "writeBatch",
    "acquire",
    "handleMessage",
    "validateToken",
    "render",
)

EXCEPTIONS = (
    "java.lang.NullPointerException",
    "java.lang.IllegalStateException",
    "java.lang.IllegalArgumentException",
    "java.io.IOException",
    "java.util.concurrent.TimeoutException",
    "java.util.ConcurrentModificationException",
    "java.net.SocketTimeoutException",
)

FAILURES = (
    "Cache is closed",
    "Connection reset by peer",
    "Read timed out",
    "Index out of date",
    "Session already invalidated",
    "Unexpected end of input",
    "Pool exhausted after 30000 ms",
    "Token signature does not match",
)

OPERATING_SYSTEMS = ("Ubuntu 22.04", "Windows 11", "macOS Sonoma", "Debian 12", "Fedora 39", "Alpine Linux")

THREADS = ("main", "pool-2-thread-1", "http-nio-8080-exec-4", "scheduler-1", "ForkJoinPool-1-worker-3")

TABLES = ("orders", "sessions", "cache_entries", "users", "audit_log", "jobs")

# ───────────────────────────────────
# 2. PROSE
# ───────────────────────────────────

ISSUE_SENTENCES = (
    "After upgrading to version {version} the {component} stops responding.",
    "I can reproduce this every time on {os} with the default configuration.",
    "The {component} throws an exception as soon as I click the save button.",
    "It looks like the problem started with the last release.",
    "This worked fine in the previous version, so it is probably a regression.",
    "Please let me know if you need more information or a sample project.",
    "I attached the relevant part of my configuration and the output I get.",
    "Instead, the whole application freezes and has to be restarted.",
    "We are running the service behind a proxy, which might be relevant here.",
    "Could someone have a look at this before the next release?",
    "The same thing happens when the {component} is started from the command line.",
    "I tried clearing the cache and reinstalling, but nothing changed.",
    "It only happens when more than one user is logged in at the same time.",
    "Memory usage keeps growing until the process is killed by the system.",
    "The issue disappears if I disable the {component} in the settings.",
    "I think the root cause is in the way the {component} handles empty values.",
    "A workaround is to restart the server every few hours, which is not ideal.",
    "Our team noticed this on the staging environment first.",
    "The error message is not very helpful and does not mention which file is missing.",
    "The documentation says this should be supported, but it does not work for me.",
    "Let me know if I should open a separate ticket for the second problem.",
    "This is blocking our upgrade, so any help would be appreciated.",
    "The problem does not occur with Java 11 but it does occur with Java 17.",
    "Sometimes it takes a few minutes before the {component} gives up completely.",
    "Nothing useful shows up in the browser console when this happens.",
    "We see the same behaviour on two different machines with clean installations.",
    "The failure is intermittent, roughly one out of five attempts fails.",
    "I expected the {component} to retry the request instead of failing right away.",
    "Rolling back to version {version} makes the problem go away.",
    "My guess is that a lock is never released when the request is cancelled.",
    "Thanks for looking into this and for maintaining the project.",
    "It seems that the {component} ignores the timeout from the configuration file.",
    "I am happy to test a snapshot build if that helps.",
    "Other users in our company reported the same thing last week.",
)

LEAD_INS = (
    "Here is the stack trace I get when the {component} crashes:",
    "My configuration looks like this:",
    "Running the following shows the error:",
    "The log contains these lines right before the failure:",
    "This is the code I use to reproduce it:",
    "The response from the server looks like this:",
    "This is what the build prints:",
    "I used these commands to set everything up:",
    "The relevant part of the output is below.",
    "You can reproduce it with this snippet.",
)

STEPS = (
    "Open the {component} and enable the advanced options.",
    "Start the server with the default profile.",
    "Import a file with more than ten thousand rows.",
    "Wait until the {component} shows the progress bar.",
    "Cancel the operation while it is still running.",
    "Restart the application and log in again.",
    "Change the language in the settings and save.",
    "Trigger a sync from the admin console.",
    "Send two requests at the same time.",
    "Close the browser tab before the upload finishes.",
)

OUTCOMES = (
    "The {component} should finish the operation and show a confirmation message.",
    "Nothing should be lost when the request is cancelled.",
    "The application should keep running and report a readable error.",
    "The {component} crashes and all unsaved changes are gone.",
    "The page stays blank and the server has to be restarted.",
    "The job runs forever and never reports any progress.",
)

QUOTES = (
    "> I think this is related to the change in the last release.",
    "> Same problem here after the upgrade.",
    "> Does this also happen with the default settings?",
)

# Prose that the noise filters still take for an artifact.
NOISY_SENTENCES = (
    "Maybe the fix is as simple as calling pool.close();",
    "The property spring.datasource.url - the one from the docs - is ignored.",
    "ERROR: is what the {component} prints, nothing else.",
    "IllegalStateException: that is all the {component} tells me.",
    "$ signs in the password break the {component}.",
)

DOC_SENTENCES = (
    "This guide explains how to configure the {component} for production use.",
    "The {component} is enabled by default and can be turned off at any time.",
    "Most settings can be changed without restarting the service.",
    "Values are read once at startup and cached for the lifetime of the process.",
    "If you are upgrading from an older release, read the migration notes first.",
    "The examples below assume that the service runs on the local machine.",
    "Every option has a sensible default, so a minimal setup needs no configuration.",
    "The {component} writes its state to disk so that it survives a restart.",
    "Large installations should increase the number of worker threads.",
    "Please report problems with this guide in the issue tracker.",
    "Contributions to the documentation are always welcome.",
    "The following table lists the options that are supported right now.",
    "Use the command line tool to check that the installation works.",
    "Older versions of the {component} used a different file format.",
)

DOC_TOPICS = ("Configuration", "Getting started", "Upgrading", "Troubleshooting", "Deployment", "Plugins")

HEADINGS = ("## Steps to reproduce", "### Expected behavior", "### Actual behavior", "## Environment", "## Details")


@dataclass(frozen=True)
class FixtureCorpus:
    issues: tuple
    docs: tuple
    truth: Dataset

    @property
    def documents(self):
        return self.issues + self.docs


class _Writer:
    """Draws every choice from one seeded generator."""

    def __init__(self, seed):
        self.rng = np.random.default_rng(seed)

    def pick(self, options):
        return options[int(self.rng.integers(len(options)))]

    def sample(self, options, k):
        return [options[i] for i in self.rng.choice(len(options), size=k, replace=False).tolist()]

    def chance(self, p):
        return bool(self.rng.random() < p)

    def between(self, low, high):
        return int(self.rng.integers(low, high + 1))

    def version(self):
        return f"{self.between(1, 4)}.{self.between(0, 9)}.{self.between(0, 12)}"

    def sha(self):
        return "".join(f"{digit:x}" for digit in self.rng.integers(0, 16, size=40).tolist())

    def fill(self, template):
        return template.format(component=self.pick(COMPONENTS), version=self.version(), os=self.pick(OPERATING_SYSTEMS))

    # ───────────────────────────────────
    # 3. ARTIFACT BLOCKS
    # ───────────────────────────────────

    def stack_trace(self, package):
        exception = self.pick(EXCEPTIONS)
        header = f"{exception}: {self.pick(FAILURES)}"
        if self.chance(0.3):
            header = f'Exception in thread "{self.pick(THREADS)}" {header}'
        lines = [header]
        for cls in self.sample(CLASSES, self.between(3, 7)):
            lines.append(f"\tat {package}.{cls}.{self.pick(METHODS)}({cls}.java:{self.between(20, 480)})")
        lines.append(f"\tat java.base/java.lang.Thread.run(Thread.java:{self.between(829, 1583)})")
        if self.chance(0.4):
            cause = self.pick(EXCEPTIONS)
            lines.append(f"Caused by: {cause}: {self.pick(FAILURES)}")
            cls = self.pick(CLASSES)
            lines.append(f"\tat {package}.{cls}.{self.pick(METHODS)}({cls}.java:{self.between(20, 480)})")
            lines.append(f"\t... {self.between(3, 40)} more")
        return lines

    def log_output(self, package):
        lines = []
        second = self.between(0, 40)
        for _ in range(self.between(3, 7)):
            second += self.between(0, 3)
            level = self.pick(("INFO ", "WARN ", "ERROR", "DEBUG"))
            stamp = f"2024-0{self.between(1, 9)}-1{self.between(0, 9)} 10:{self.between(10, 59)}:{second % 60:02d}"
            message = self.pick(
                (
                    f"Starting {self.pick(COMPONENTS)} with {self.between(2, 16)} workers",
                    f"Retrying {self.pick(METHODS)} after timeout",
                    f"{self.pick(FAILURES)}",
                    f"Processed {self.between(10, 9000)} records in {self.between(5, 900)} ms",
                )
            )
            lines.append(
                f"{stamp},{self.between(100, 999)} {level} [{self.pick(THREADS)}] "
                f"{package}.{self.pick(CLASSES)} - {message}"
            )
        return lines

    def java_code(self, package):
        cls, method = self.pick(CLASSES), self.pick(METHODS)
        variable = cls[0].lower() + cls[1:]
        lines = [f"{cls} {variable} = new {cls}(config);"]
        lines += self.sample(
            (
                f"{variable}.{method}();",
                f'{variable}.setName("{self.pick(TABLES)}");',
                f"List<String> keys = {variable}.{self.pick(METHODS)}(limit);",
                f"assertEquals({self.between(1, 99)}, {variable}.size());",
                f"Thread.sleep({self.between(1, 9) * 100});",
                f"{variable}.close();",
                f"int count = {variable}.count() + offset;",
                f'System.out.println("done: " + {variable});',
            ),
            self.between(2, 4),
        )
        if self.chance(0.5):
            lines = (
                [f"import {package}.{cls};", f"public class {cls}Test {{"]
                + ["    @Test", f"    public void {method}Fails() {{"]
                + [f"        {line}" for line in lines]
                + ["    }", "}"]
            )
        return lines

    def json_payload(self):
        lines = ["{", f'  "id": {self.between(1, 9999)},', f'  "status": "{self.pick(("FAILED", "PENDING", "OK"))}",']
        if self.chance(0.5):
            lines += ['  "items": [', f'    "{self.pick(TABLES)}",', f'    "{self.pick(TABLES)}"', "  ],"]
        lines += [f'  "message": "{self.pick(FAILURES)}",', f'  "retries": {self.between(0, 5)}', "}"]
        return lines

    def xml_snippet(self, project):
        if self.chance(0.5):
            return [
                "<dependency>",
                f"  <groupId>{PACKAGES[project]}</groupId>",
                f"  <artifactId>{project}</artifactId>",
                f"  <version>{self.version()}</version>",
                "</dependency>",
            ]
        return [
            f'<configuration name="{self.pick(TABLES)}">',
            f'  <property name="timeout" value="{self.between(1, 60) * 1000}"/>',
            f'  <property name="workers" value="{self.between(1, 32)}"/>',
            "</configuration>",
        ]

    def shell_session(self, project):
        lines = []
        for command in self.sample(
            (
                "mvn clean install -DskipTests",
                f"docker compose -p {project} up -d",
                "git pull --rebase origin main",
                f"java -jar {project}.jar --spring.profiles.active=prod",
                f"curl -s http://localhost:8080/api/{self.pick(TABLES)}",
                "./gradlew test --info",
            ),
            self.between(1, 3),
        ):
            lines.append(f"{self.pick(('$', 'user@build:~$'))} {command}")
        lines.append(self.pick(("BUILD FAILED in 14s", "Total time:  38.412 s", "exit status 1", "Killed")))
        return lines

    def yaml_config(self):
        return [
            "server:",
            f"  port: {self.pick(('8080', '8443', '9090'))}",
            f"  threads: {self.between(4, 64)}",
            f"{self.pick(('cache', 'sync', 'storage'))}:",
            f"  enabled: {self.pick(('true', 'false'))}",
            f"  ttl: {self.between(1, 60) * 60}",
            f"  path: /var/lib/{self.pick(PROJECTS)}",
        ][: self.between(4, 7)]

    def properties_config(self, project):
        return self.sample(
            (
                f"spring.datasource.url=jdbc:postgresql://db:5432/{project.replace('-', '_')}",
                "spring.datasource.username=app",
                f"{project}.cache.size={self.between(1, 64) * 128}",
                f"{project}.retry.max-attempts={self.between(1, 9)}",
                "logging.level.root=WARN",
                f"server.servlet.session.timeout={self.between(5, 60)}m",
            ),
            self.between(3, 5),
        )

    def sql_query(self):
        table = self.pick(TABLES)
        return self.sample(
            (
                f"SELECT id, name, created_at FROM {table} WHERE status = 'OPEN'",
                f"UPDATE {table} SET retries = retries + 1 WHERE id = {self.between(1, 999)}",
                f"DELETE FROM {table} WHERE created_at < now() - interval '7 days'",
                f"CREATE INDEX idx_{table}_status ON {table} (status)",
                f"EXPLAIN ANALYZE SELECT count(*) FROM {table}",
            ),
            self.between(1, 3),
        )

    def python_script(self):
        return [
            "import requests",
            f"url = 'http://localhost:8080/api/{self.pick(TABLES)}'",
            f"for attempt in range({self.between(2, 9)}):",
            f"  response = requests.get(url, timeout={self.between(1, 30)})",
            "  print(attempt, response.status_code)",
        ]

    def kotlin_snippet(self):
        cls = self.pick(CLASSES)
        return [
            f"val client = {cls}(config)",
            f"val result = client.{self.pick(METHODS)}(request)",
            "println(result.status)",
        ]

    def gradle_build(self, project):
        return [
            "dependencies {",
            f"  implementation '{PACKAGES[project]}:{project}:{self.version()}'",
            "  testImplementation 'org.junit.jupiter:junit-jupiter:5.10.2'",
            "}",
        ]

    def test_report(self):
        total = self.between(10, 400)
        return [
            f"Tests run: {total}, Failures: {self.between(1, 5)}, Errors: 0, Skipped: {self.between(0, 9)}",
            f"Results: {self.pick(CLASSES)}Test.{self.pick(METHODS)}Fails expected 200 but was 500",
            f"Time elapsed: {self.between(1, 90)}.{self.between(100, 999)} s",
        ]

    def file_listing(self, project):
        return [
            f"total {self.between(8, 96)}",
            f"drwxr-xr-x  2 app app  4096 Mar  {self.between(1, 9)} 10:15 config",
            f"-rw-r--r--  1 app app  {self.between(300, 9000)} Mar  {self.between(1, 9)} 10:15 application.yml",
            f"-rwxr-xr-x  1 app app  {self.between(10, 90)}M Mar  {self.between(1, 9)} 10:16 {project}.jar",
        ]

    def thread_dump(self):
        thread = self.pick(THREADS)
        return [
            f'"{thread}" #{self.between(1, 80)} prio=5 os_prio=0 '
            f"tid=0x00007f3c{self.between(1000, 9999)} waiting on condition",
            "   java.lang.Thread.State: WAITING (parking)",
            f"  - parking to wait for <0x0000000712{self.between(100000, 999999)}> "
            "(a java.util.concurrent.locks.ReentrantLock$NonfairSync)",
        ]

    def artifact_block(self, project):
        package = PACKAGES[project]
        kind = self.pick(
            (
                ("java", lambda: self.java_code(package)),
                ("", lambda: self.stack_trace(package)),
                ("", lambda: self.log_output(package)),
                ("json", self.json_payload),
                ("xml", lambda: self.xml_snippet(project)),
                ("bash", lambda: self.shell_session(project)),
                ("yaml", self.yaml_config),
                ("properties", lambda: self.properties_config(project)),
                ("sql", self.sql_query),
                ("python", self.python_script),
                ("kotlin", self.kotlin_snippet),
                ("groovy", lambda: self.gradle_build(project)),
                ("", self.test_report),
                ("", lambda: self.file_listing(project)),
                ("", self.thread_dump),
            )
        )
        return kind[0], kind[1]()

    def unformatted_paste(self):
        """Artifact lines that no rule labels as an artifact when pasted without a fence."""
        kinds = (self.sql_query, self.python_script, self.kotlin_snippet, self.test_report, self.yaml_config)
        return self.pick(kinds)()

    def fenced(self, project):
        info, lines = self.artifact_block(project)
        fence = self.pick(("```", "```", "~~~"))
        return [(f"{fence}{info}", ART)] + [(line, ART) for line in lines] + [(fence, ART)]

    # ───────────────────────────────────
    # 4. DOCUMENTS
    # ───────────────────────────────────

    def paragraph(self, templates, low=1, high=3):
        return [(self.fill(template), NL) for template in self.sample(templates, self.between(low, high))]

    def issue_body(self, project, fenced):
        package = PACKAGES[project]
        blocks = [self.paragraph(ISSUE_SENTENCES, 1, 3)]
        if self.chance(0.5):
            steps = self.sample(STEPS, self.between(2, 4))
            blocks.append(
                [(HEADINGS[0], NL)] + [(f"{number}. {self.fill(step)}", NL) for number, step in enumerate(steps, 1)]
            )
        for _ in range(self.between(1, 3) if fenced else 0):
            blocks.append([(self.fill(self.pick(LEAD_INS)), NL)] + self.fenced(project))
            if self.chance(0.5):
                blocks.append(self.paragraph(ISSUE_SENTENCES, 1, 2))
        if not fenced and self.chance(0.6):
            paste = self.stack_trace(package) if self.chance(0.5) else self.log_output(package)
            blocks.append([(self.fill(self.pick(LEAD_INS)), NL)] + [(line, ART) for line in paste])
        if fenced and self.chance(0.3):
            blocks.append([(self.fill(self.pick(LEAD_INS)), NL)] + [(line, ART) for line in self.unformatted_paste()])
        if self.chance(0.5):
            blocks.append([(self.pick(HEADINGS[1:3]), NL), (self.fill(self.pick(OUTCOMES)), NL)])
        if self.chance(0.3):
            blocks.append([(self.pick(QUOTES), NL)])
        if self.chance(0.35):
            blocks.append([(self.fill(self.pick(NOISY_SENTENCES)), NL)])
        if self.chance(0.4):
            blocks.append(
                [
                    ("## Environment", NL),
                    (f"- OS: {self.pick(OPERATING_SYSTEMS)}", NL),
                    (f"- Version: {self.version()}", NL),
                ]
            )
        if self.chance(0.2):
            number = self.between(1, 400)
            blocks.append([(f"[Related issue](https://github.com/acme/{project}/issues/{number})", ART)])
        blocks.append(self.paragraph(ISSUE_SENTENCES, 1, 2))
        return _join(blocks)

    def doc_body(self, project, topic):
        blocks = [[(f"# {project} {topic.lower()}", NL)] + self.paragraph(DOC_SENTENCES, 2, 4)]
        for _ in range(self.between(2, 4)):
            section = [(f"## {self.pick(DOC_TOPICS)}", NL)] + self.paragraph(DOC_SENTENCES, 1, 3)
            blocks.append(section)
            blocks.append(self.fenced(project))
        blocks.append(
            [
                ("| Option | Default | Description |", ART),
                ("| --- | --- | --- |", ART),
            ]
            + [
                (f"| `{project}.{name}` | `{self.between(1, 600)}` | {self.fill(self.pick(DOC_SENTENCES))} |", ART)
                for name in self.sample(("timeout", "workers", "cache.size", "retry.delay", "batch.size"), 3)
            ]
        )
        if self.chance(0.5):
            blocks.append(
                [
                    ("A minimal example:", NL),
                    ("", None),
                    (f"    {self.pick(CLASSES)} client = {self.pick(CLASSES)}.create();", ART),
                    (f"    client.{self.pick(METHODS)}();", ART),
                ]
            )
        blocks.append(
            [(f"See the [release notes](https://example.org/{project}/releases) for the full list of changes.", NL)]
        )
        return _join(blocks)


def _join(blocks):
    lines = []
    for block in blocks:
        if lines:
            lines.append(("", None))
        lines.extend(block)
    return lines


def _issue_labels(writer):
    draw = writer.rng.random()
    if draw < 0.75:
        labels = {"bug"}
    elif draw < 0.83:
        labels = {"defect"}
    elif draw < 0.9:
        labels = {"regression"}
    else:
        labels = {writer.pick(("enhancement", "question"))}
    if writer.chance(0.3):
        labels.add(writer.pick(("ui", "performance", "needs-triage")))
    return labels


def _truth_lines(doc_id, lines):
    return [
        LabeledLine(text=text, label=label, doc_id=doc_id, line_no=line_no, provenance=Provenance.MANUAL)
        for line_no, (text, label) in enumerate(lines)
        if label is not None
    ]


def generate_fixture_corpus(seed=0, n_issues=120, n_docs=20):
    """Build the corpus in memory; the same seed always yields the same corpus."""
    writer = _Writer(seed)
    issues, docs, truth = [], [], []
    numbers = {project: 100 for project in PROJECTS}

    for _ in range(n_issues):
        project = writer.pick(PROJECTS)
        numbers[project] += writer.between(1, 9)
        lines = writer.issue_body(project, fenced=writer.chance(0.7))
        doc = Document(
            id=f"{project}#{numbers[project]}",
            body="\n".join(text for text, _ in lines) + "\n",
            kind=DocumentKind.ISSUE_TICKET,
            project=project,
            labels=_issue_labels(writer),
            linked_commits=tuple(writer.sha() for _ in range(writer.between(1, 2))) if writer.chance(0.25) else (),
        )
        issues.append(doc)
        truth.extend(_truth_lines(doc.id, lines))

    for index in range(n_docs):
        project, topic = PROJECTS[index % len(PROJECTS)], DOC_TOPICS[index % len(DOC_TOPICS)]
        lines = writer.doc_body(project, topic)
        doc = Document(
            id=f"docs/{project}/{index:02d}-{topic.lower().replace(' ', '-')}.md",
            body="\n".join(text for text, _ in lines) + "\n",
            kind=DocumentKind.DOCUMENTATION_FILE,
            project="docs",
        )
        docs.append(doc)
        truth.extend(_truth_lines(doc.id, lines))

    return FixtureCorpus(issues=tuple(issues), docs=tuple(docs), truth=Dataset(truth))


def build_fixture_corpus(out_dir, seed=0, n_issues=120, n_docs=20):
    """
    Write the corpus below ``out_dir``.

    Layout: ``issues/<project>.jsonl`` issue exports, ``docs/<project>/*.md``
    documentation and ``truth.jsonl`` with the hand-assigned label of every
    non-blank line.
    """
    out_dir = Path(out_dir)
    corpus = generate_fixture_corpus(seed=seed, n_issues=n_issues, n_docs=n_docs)
    for project in PROJECTS:
        exported = [doc for doc in corpus.issues if doc.project == project]
        if exported:
            write_issue_export(exported, out_dir / "issues" / f"{project}.jsonl")
    for doc in corpus.docs:
        target = out_dir / doc.id
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(doc.body, encoding="utf-8", newline="\n")
    write_dataset(corpus.truth, out_dir / "truth.jsonl")
    logger.info(
        "wrote fixture corpus with %d issues, %d documentation files and %d labeled lines to %s",
        len(corpus.issues),
        len(corpus.docs),
        len(corpus.truth),
        out_dir,
    )
    return corpus
