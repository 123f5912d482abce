from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from src.api.routes import channel, criteria, measures, state
from src.gaussian.errors import DomainError, NumericalError
from src.settings import API_CONFIG

# Lifespan context manager for startup/shutdown
@asynccontextmanager
async def lifespan(app: FastAPI):
    # Startup
    print("="*80, flush=True)
    print("GAUSSIAN ISOTROPIC STATE API STARTED", flush=True)
    print("Criteria, measures and channel reports for gamma_GI(r, p)", flush=True)
    print("="*80, flush=True)
    yield
    # Shutdown
    print("Shutting down...", flush=True)

app = FastAPI(title=API_CONFIG["title"], version=API_CONFIG["version"], lifespan=lifespan)

app.add_middleware(
    CORSMiddleware,
    allow_origins=API_CONFIG["allowed_origins"],
    allow_credentials=True,
    allow_methods=["GET"],
    allow_headers=["*"],
    max_age=3600,
)


@app.exception_handler(DomainError)
async def domain_error_handler(request: Request, exc: DomainError):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(NumericalError)
async def numerical_error_handler(request: Request, exc: NumericalError):
    return JSONResponse(status_code=500, content={"detail": str(exc)})


# Include routers
app.include_router(state.router)
app.include_router(criteria.router)
app.include_router(measures.router)
app.include_router(channel.router)

@app.get("/")
def root():
    return {
        "message": "Gaussian Isotropic State API",
        "version": API_CONFIG["version"],
        "features": ["state", "criteria", "measures", "channel"]
    }
